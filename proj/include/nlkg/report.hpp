#pragma once
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

namespace nlkg {

using Json = nlohmann::json;

// Every number that enters a report goes through this printer; the text
// rendering walks the same JSON tree, so the two views agree exactly.
std::string fmt_num(double v);

// flat "path = value" rendering in key order
std::string render_text(const Json& report);

void write_text_file(const std::string& path, const std::string& text);
void write_json_file(const std::string& path, const Json& j);

// deterministic CSV: %.17g, '\n' line endings, no locale surprises
void write_csv(const std::string& path, const std::vector<std::string>& cols,
               const std::vector<Eigen::VectorXd>& rows);

std::string join_path(const std::string& dir, const std::string& name);

}  // namespace nlkg
