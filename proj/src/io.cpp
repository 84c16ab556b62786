#include "rootgas/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rootgas {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s == "inf" || s == "+inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s == "nan") return std::nan("");
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw UsageError("not a number: '" + std::string(s) + "'");
  return v;
}

// ---- CSV -----------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i];
  }
  return out;
}

double cell_value(const CsvTable& t, std::size_t r, int c) {
  try {
    return parse_double(t.rows[r].at(static_cast<std::size_t>(c)));
  } catch (const std::out_of_range&) {
    throw UsageError("row " + std::to_string(r + 2) + " is too short");
  }
}

}  // namespace

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    for (auto& f : fields) f = trim(f);
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      t.rows.push_back(std::move(fields));
    }
  }
  if (first) throw IoError(path.string() + ": empty file");
  return t;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::string text = join(table.header) + "\n";
  for (const auto& r : table.rows) text += join(r) + "\n";
  write_text(path, text);
}

void write_measure_csv(const std::filesystem::path& path, const GridMeasure& mu) {
  CsvTable t;
  if (mu.space == Space::Plane)
    t.header = {"re", "im", "weight", "cell"};
  else
    t.header = {"x1", "x2", "x3", "weight", "cell"};
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    std::vector<std::string> r;
    const int dims = mu.space == Space::Plane ? 2 : 3;
    for (int k = 0; k < dims; ++k) r.push_back(format_double(mu.points(i, k)));
    r.push_back(format_double(mu.weights(i)));
    r.push_back(format_double(mu.cell(i)));
    t.rows.push_back(std::move(r));
  }
  write_csv(path, t);
}

GridMeasure read_measure_csv(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  GridMeasure mu;
  std::vector<int> coords;
  if (t.column("re") >= 0 && t.column("im") >= 0) {
    mu.space = Space::Plane;
    coords = {t.column("re"), t.column("im")};
  } else if (t.column("x1") >= 0 && t.column("x2") >= 0 && t.column("x3") >= 0) {
    mu.space = Space::Sphere;
    coords = {t.column("x1"), t.column("x2"), t.column("x3")};
  } else {
    throw UsageError(path.string() + ": header needs re,im or x1,x2,x3");
  }
  const int wc = t.column("weight"), cc = t.column("cell");
  if (wc < 0) throw UsageError(path.string() + ": missing weight column");
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  if (n == 0) throw UsageError(path.string() + ": no rows");
  mu.points = Points::Zero(n, 3);
  mu.weights.resize(n);
  mu.cell = Eigen::VectorXd::Constant(n, kInf);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(i);
    for (std::size_t k = 0; k < coords.size(); ++k) mu.points(i, static_cast<Eigen::Index>(k)) = cell_value(t, r, coords[k]);
    mu.weights(i) = cell_value(t, r, wc);
    if (cc >= 0) mu.cell(i) = cell_value(t, r, cc);
  }
  try {
    mu.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
  return mu;
}

OrthogonalWeight read_orthogonal_csv(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  const int re = t.column("re"), im = t.column("im"), nu = t.column("nu_weight"), phi = t.column("phi");
  if (re < 0 || im < 0 || nu < 0 || phi < 0) throw UsageError(path.string() + ": header must be re,im,nu_weight,phi");
  OrthogonalWeight w;
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  w.nu.resize(n);
  w.phi.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(i);
    w.support.emplace_back(cell_value(t, r, re), cell_value(t, r, im));
    w.nu(i) = cell_value(t, r, nu);
    w.phi(i) = cell_value(t, r, phi);
  }
  try {
    w.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
  return w;
}

void write_orthogonal_csv(const std::filesystem::path& path, const OrthogonalWeight& w) {
  CsvTable t;
  t.header = {"re", "im", "nu_weight", "phi"};
  for (std::size_t i = 0; i < w.support.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    t.rows.push_back({format_double(w.support[i].real()), format_double(w.support[i].imag()), format_double(w.nu(j)),
                      format_double(w.phi(j))});
  }
  write_csv(path, t);
}

void write_chain_csv(const std::filesystem::path& path, const ChainResult& chain) {
  CsvTable t;
  t.header = {"step", "H", "k"};
  const std::size_t n = chain.samples.empty() ? 0 : chain.samples.front().particles.size();
  for (std::size_t i = 1; i <= n; ++i) {
    t.header.push_back("re_" + std::to_string(i));
    t.header.push_back("im_" + std::to_string(i));
  }
  const auto& d = chain.diagnostics;
  for (std::size_t s = 0; s < chain.samples.size(); ++s) {
    const auto& g = chain.samples[s];
    const long rec = static_cast<long>(s) * d.thin;
    std::vector<std::string> r{std::to_string(d.burn_in + (rec + 1) * d.record_every), format_double(g.hamiltonian),
                               std::to_string(g.k)};
    for (const auto& z : g.particles) {
      r.push_back(format_double(z.real()));
      r.push_back(format_double(z.imag()));
    }
    t.rows.push_back(std::move(r));
  }
  write_csv(path, t);
}

// ---- configuration -------------------------------------------------------------

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
    c.values_[key] = trim(line.substr(eq + 1));
  }
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return parse_double(it->second);
  } catch (const UsageError&) {
    throw UsageError("config key " + key + ": not a number");
  }
}

long Config::get_long(const std::string& key, long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  long v = 0;
  const auto& s = it->second;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw UsageError("config key " + key + ": not an integer");
  return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const auto& s = it->second;
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw UsageError("config key " + key + ": not a boolean");
}

std::vector<long> Config::get_long_list(const std::string& key, const std::vector<long>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<long> out;
  for (const auto& part : split(get(key, ""), ',')) {
    Config tmp;
    tmp.set("v", trim(part));
    try {
      out.push_back(tmp.get_long("v", 0));
    } catch (const UsageError&) {
      throw UsageError("config key " + key + ": not an integer list");
    }
  }
  return out;
}

std::vector<double> Config::get_double_list(const std::string& key, const std::vector<double>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<double> out;
  for (const auto& part : split(get(key, ""), ',')) {
    try {
      out.push_back(parse_double(trim(part)));
    } catch (const UsageError&) {
      throw UsageError("config key " + key + ": not a number list");
    }
  }
  return out;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + "=" + v + "\n";  // std::map iterates sorted
  return out;
}

std::string Config::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical())));
  return buf;
}

}  // namespace rootgas
