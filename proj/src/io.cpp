#include "avd/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "avd/error.hpp"

namespace avd {

namespace {

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  // Next non-blank line split on whitespace; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      tokens.clear();
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::Parse, source_ + ":" + std::to_string(line_no_) + ": " + message);
  }

  double number(const std::string& tok) const {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
      fail("expected a finite number, got '" + tok + "'");
    return v;
  }

  long long integer(const std::string& tok) const {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("expected an integer, got '" + tok + "'");
    return v;
  }

  int line() const { return line_no_; }

 private:
  std::istream& in_;
  std::string source_;
  int line_no_ = 0;
};

int parse_dimension(const LineReader& r, const std::string& tok) {
  const long long n = r.integer(tok);
  if (n != 2 && n != 3) r.fail("dimension must be 2 or 3");
  return static_cast<int>(n);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::shared_ptr<SimplicialMetricMesh> parse_mesh(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  std::vector<std::string> t;
  if (!r.next(t)) r.fail("empty mesh file");
  if (t.size() != 4 || t[0] != "avdmesh") r.fail("expected header 'avdmesh <n> <num_vertices> <num_simplices>'");
  const int n = parse_dimension(r, t[1]);
  const long long nv = r.integer(t[2]), ns = r.integer(t[3]);
  if (nv < 1 || ns < 1) r.fail("vertex and simplex counts must be positive");

  const std::size_t upper = n == 2 ? 3 : 6;
  std::vector<Vec> vertices;
  std::vector<SpdMatrix> ms;
  std::vector<std::array<int, 4>> simplices;
  std::vector<int> simplex_lines;
  while (r.next(t)) {
    if (t[0] == "v") {
      if (t.size() != 1 + n + upper)
        r.fail("vertex record needs " + std::to_string(n + upper) + " numbers, got " + std::to_string(t.size() - 1));
      if (static_cast<long long>(vertices.size()) >= nv) r.fail("more vertex records than declared");
      Vec p(n);
      for (int k = 0; k < n; ++k) p[k] = r.number(t[1 + k]);
      double m[6];
      for (std::size_t k = 0; k < upper; ++k) m[k] = r.number(t[1 + n + k]);
      try {
        ms.push_back(SpdMatrix::from_upper(n, m));
      } catch (const Error& e) {
        r.fail(std::string("vertex matrix: ") + e.what());
      }
      vertices.push_back(p);
    } else if (t[0] == "s") {
      if (t.size() != static_cast<std::size_t>(n + 2))
        r.fail("simplex record needs " + std::to_string(n + 1) + " vertex indices");
      if (static_cast<long long>(simplices.size()) >= ns) r.fail("more simplex records than declared");
      std::array<int, 4> s{};
      for (int a = 0; a <= n; ++a) {
        const long long idx = r.integer(t[1 + a]);
        if (idx < 0 || idx >= nv) r.fail("vertex index " + t[1 + a] + " out of range");
        s[a] = static_cast<int>(idx);
      }
      simplices.push_back(s);
      simplex_lines.push_back(r.line());
    } else {
      r.fail("unknown record '" + t[0] + "'");
    }
  }
  if (static_cast<long long>(vertices.size()) != nv)
    r.fail("declared " + std::to_string(nv) + " vertices, found " + std::to_string(vertices.size()));
  if (static_cast<long long>(simplices.size()) != ns)
    r.fail("declared " + std::to_string(ns) + " simplices, found " + std::to_string(simplices.size()));
  try {
    return std::make_shared<SimplicialMetricMesh>(n, std::move(vertices), std::move(simplices), std::move(ms));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Degenerate) throw Error(ErrorCode::Degenerate, source + ": " + e.what());
    throw Error(ErrorCode::Parse, source + ": " + e.what());
  }
}

std::shared_ptr<SimplicialMetricMesh> load_mesh(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_mesh(in, path.string());
}

void write_mesh(std::ostream& out, const SimplicialMetricMesh& mesh) {
  const int n = mesh.dimension();
  out << "avdmesh " << n << " " << mesh.num_vertices() << " " << mesh.num_simplices() << "\n";
  for (std::size_t j = 0; j < mesh.num_vertices(); ++j) {
    out << "v";
    for (int k = 0; k < n; ++k) out << " " << format_double(mesh.vertex(j)[k]);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) out << " " << format_double(mesh.vertex_m(j)(a, b));
    out << "\n";
  }
  for (std::size_t i = 0; i < mesh.num_simplices(); ++i) {
    out << "s";
    for (int v : mesh.simplex(i)) out << " " << v;
    out << "\n";
  }
}

void save_mesh(const std::filesystem::path& path, const SimplicialMetricMesh& mesh) {
  auto out = open_output(path);
  write_mesh(out, mesh);
}

SiteSet parse_sites(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  std::vector<std::string> t;
  if (!r.next(t)) r.fail("empty sites file");
  if (t.size() != 3 || t[0] != "avdsites") r.fail("expected header 'avdsites <n> <count>'");
  const int n = parse_dimension(r, t[1]);
  const long long count = r.integer(t[2]);
  if (count < 1) r.fail("site count must be positive");
  std::vector<Vec> pts;
  while (r.next(t)) {
    if (t.size() != static_cast<std::size_t>(n))
      r.fail("site record needs " + std::to_string(n) + " coordinates, got " + std::to_string(t.size()));
    if (static_cast<long long>(pts.size()) >= count) r.fail("more site records than declared");
    Vec p(n);
    for (int k = 0; k < n; ++k) p[k] = r.number(t[k]);
    pts.push_back(p);
  }
  if (static_cast<long long>(pts.size()) != count)
    r.fail("declared " + std::to_string(count) + " sites, found " + std::to_string(pts.size()));
  try {
    return SiteSet(n, std::move(pts));
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, source + ": " + e.what());
  }
}

SiteSet load_sites(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_sites(in, path.string());
}

void write_sites(std::ostream& out, const SiteSet& sites) {
  out << "avdsites " << sites.dimension() << " " << sites.size() << "\n";
  for (const Vec& p : sites.points()) {
    for (int k = 0; k < p.size(); ++k) out << (k ? " " : "") << format_double(p[k]);
    out << "\n";
  }
}

void save_sites(const std::filesystem::path& path, const SiteSet& sites) {
  auto out = open_output(path);
  write_sites(out, sites);
}

}  // namespace avd
