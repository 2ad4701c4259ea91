#include "nlkg/cache.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

namespace nlkg {
namespace {

namespace fs = std::filesystem;

constexpr char kMagic[8] = {'N', 'L', 'K', 'G', 'S', 'P', 'C', '2'};

struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  }
  void num(double v) { bytes(&v, sizeof v); }
  void num(std::int64_t v) { bytes(&v, sizeof v); }
};

void put_vec(std::ofstream& f, const Eigen::VectorXd& v) {
  const std::int64_t n = v.size();
  f.write(reinterpret_cast<const char*>(&n), sizeof n);
  f.write(reinterpret_cast<const char*>(v.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
}

bool get_vec(std::ifstream& f, Eigen::VectorXd& v, std::int64_t cap) {
  std::int64_t n = -1;
  f.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!f || n < 0 || n > cap) return false;
  v.resize(n);
  f.read(reinterpret_cast<char*>(v.data()),
         static_cast<std::streamsize>(n * sizeof(double)));
  return static_cast<bool>(f);
}

std::string key_path(std::uint64_t key) {
  const std::string dir = cache_dir();
  if (dir.empty()) return {};
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.bin",
                static_cast<unsigned long long>(key));
  return (fs::path(dir) / name).string();
}

}  // namespace

std::uint64_t spectral_key(const Grid1D& g, const Potential& V, double m,
                           const Tolerances& tol) {
  Fnv f;
  f.bytes(kMagic, sizeof kMagic);
  f.num(static_cast<std::int64_t>(g.n_total));
  f.num(g.L);
  f.num(m);
  f.num(tol.edge_factor);
  f.bytes(V.tag.data(), V.tag.size());
  f.num(static_cast<std::int64_t>(V.values.size()));
  f.bytes(V.values.data(), V.values.size() * sizeof(double));
  return f.h;
}

std::string cache_dir() {
  fs::path dir;
  if (const char* env = std::getenv("NLKG_CACHE_DIR"); env && *env)
    dir = env;
  else if (const char* home = std::getenv("HOME"); home && *home)
    dir = fs::path(home) / ".cache" / "nlkg";
  else
    dir = ".nlkg-cache";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir)) return {};
  return dir.string();
}

bool load_spectral_cache(std::uint64_t key, SpectralData& out) {
  const std::string path = key_path(key);
  if (path.empty()) return false;
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;

  char magic[8];
  f.read(magic, sizeof magic);
  if (!f || std::memcmp(magic, kMagic, sizeof kMagic) != 0) return false;
  std::uint64_t stored = 0;
  f.read(reinterpret_cast<char*>(&stored), sizeof stored);
  if (!f || stored != key) return false;

  std::int64_t n_total = 0, tag_len = 0, n_bound = 0;
  double L = 0, m = 0, tol_edge = 0;
  f.read(reinterpret_cast<char*>(&n_total), sizeof n_total);
  f.read(reinterpret_cast<char*>(&L), sizeof L);
  f.read(reinterpret_cast<char*>(&m), sizeof m);
  f.read(reinterpret_cast<char*>(&tol_edge), sizeof tol_edge);
  f.read(reinterpret_cast<char*>(&tag_len), sizeof tag_len);
  if (!f || n_total < 3 || n_total > (1 << 24) || tag_len < 0 || tag_len > 256)
    return false;

  SpectralData S;
  S.grid = Grid1D::make(L, static_cast<int>(n_total));
  S.m = m;
  S.tol_edge = tol_edge;
  S.pot.tag.resize(static_cast<std::size_t>(tag_len));
  f.read(S.pot.tag.data(), tag_len);

  const std::int64_t n = S.grid.n;
  if (!get_vec(f, S.pot.params, 64)) return false;
  if (!get_vec(f, S.pot.values, n) || S.pot.values.size() != n) return false;
  if (!get_vec(f, S.evals, n) || S.evals.size() != n) return false;

  std::int64_t rows = 0, cols = 0;
  f.read(reinterpret_cast<char*>(&rows), sizeof rows);
  f.read(reinterpret_cast<char*>(&cols), sizeof cols);
  if (!f || rows != n || cols != n) return false;
  S.evecs.resize(rows, cols);
  f.read(reinterpret_cast<char*>(S.evecs.data()),
         static_cast<std::streamsize>(rows * cols * sizeof(double)));

  f.read(reinterpret_cast<char*>(&n_bound), sizeof n_bound);
  if (!f || n_bound < 0 || n_bound > n) return false;
  S.n_bound = static_cast<int>(n_bound);
  if (!get_vec(f, S.omega, n) || S.omega.size() != n_bound) return false;
  if (!get_vec(f, S.mu_cont, n) || S.mu_cont.size() != n - n_bound)
    return false;

  out = std::move(S);
  return true;
}

void store_spectral_cache(std::uint64_t key, const SpectralData& S) {
  const std::string path = key_path(key);
  if (path.empty()) return;
  const std::string tmp =
      path + ".tmp." + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) return;
    f.write(kMagic, sizeof kMagic);
    f.write(reinterpret_cast<const char*>(&key), sizeof key);
    const std::int64_t n_total = S.grid.n_total,
                       tag_len =
                           static_cast<std::int64_t>(S.pot.tag.size()),
                       n_bound = S.n_bound;
    f.write(reinterpret_cast<const char*>(&n_total), sizeof n_total);
    f.write(reinterpret_cast<const char*>(&S.grid.L), sizeof S.grid.L);
    f.write(reinterpret_cast<const char*>(&S.m), sizeof S.m);
    f.write(reinterpret_cast<const char*>(&S.tol_edge), sizeof S.tol_edge);
    f.write(reinterpret_cast<const char*>(&tag_len), sizeof tag_len);
    f.write(S.pot.tag.data(), tag_len);
    put_vec(f, S.pot.params);
    put_vec(f, S.pot.values);
    put_vec(f, S.evals);
    const std::int64_t rows = S.evecs.rows(), cols = S.evecs.cols();
    f.write(reinterpret_cast<const char*>(&rows), sizeof rows);
    f.write(reinterpret_cast<const char*>(&cols), sizeof cols);
    f.write(reinterpret_cast<const char*>(S.evecs.data()),
            static_cast<std::streamsize>(rows * cols * sizeof(double)));
    f.write(reinterpret_cast<const char*>(&n_bound), sizeof n_bound);
    put_vec(f, S.omega);
    put_vec(f, S.mu_cont);
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      return;
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

SpectralData cached_decompose(const Grid1D& g, const Potential& V, double m,
                              const Tolerances& tol) {
  const std::uint64_t key = spectral_key(g, V, m, tol);
  SpectralData S;
  if (load_spectral_cache(key, S)) return S;
  S = spectral_decompose(g, V, m, tol);
  store_spectral_cache(key, S);
  return S;
}

}  // namespace nlkg
