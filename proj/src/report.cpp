#include "nlkg/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nlkg/errors.hpp"

namespace nlkg {

std::string fmt_num(double v) { return Json(v).dump(); }

namespace {

// leaves print through Json::dump, so text and JSON renderings of the same
// tree can never disagree on a digit
void walk(const Json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      walk(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    return;
  }
  if (j.is_array()) {
    bool flat = true;
    for (const auto& e : j) flat = flat && !e.is_structured();
    if (flat) {
      out += path + " = [";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        out += j[i].dump();
      }
      out += "]\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i)
        walk(j[i], path + "[" + std::to_string(i) + "]", out);
    }
    return;
  }
  out += path + " = " + j.dump() + "\n";
}

}  // namespace

std::string render_text(const Json& report) {
  std::string out;
  walk(report, "", out);
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  f << text;
}

void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

void write_csv(const std::string& path, const std::vector<std::string>& cols,
               const std::vector<Eigen::VectorXd>& rows) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw ConfigError("cannot open for writing: " + path);
  for (std::size_t i = 0; i < cols.size(); ++i)
    std::fprintf(f, "%s%s", i ? "," : "", cols[i].c_str());
  std::fputc('\n', f);
  for (const auto& r : rows) {
    for (Eigen::Index i = 0; i < r.size(); ++i)
      std::fprintf(f, "%s%.17g", i ? "," : "", r[i]);
    std::fputc('\n', f);
  }
  std::fclose(f);
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace nlkg
