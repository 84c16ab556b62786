#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rootgas/ensembles.hpp"
#include "rootgas/gibbs.hpp"
#include "rootgas/measures.hpp"

namespace rootgas {

class IoError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration or arguments (exit code 2 at the CLI).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Shortest round-trip is not used on purpose: always 17 significant digits,
/// "inf", "-inf" or "nan". Independent of the C++ and C locales.
std::string format_double(double x);
/// Accepts the output of format_double and plain decimal/scientific forms.
double parse_double(std::string_view s);

// ---- CSV -----------------------------------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Plane: re,im,weight[,cell]; sphere: x1,x2,x3,weight[,cell]. A missing
/// cell column means genuine atoms (cell = inf).
void write_measure_csv(const std::filesystem::path& path, const GridMeasure& mu);
GridMeasure read_measure_csv(const std::filesystem::path& path);

/// re,im,nu_weight,phi
OrthogonalWeight read_orthogonal_csv(const std::filesystem::path& path);
void write_orthogonal_csv(const std::filesystem::path& path, const OrthogonalWeight& w);

/// step,H,k,re_1,im_1,...,re_n,im_n for the thinned samples.
void write_chain_csv(const std::filesystem::path& path, const ChainResult& chain);

void write_text(const std::filesystem::path& path, const std::string& text);

// ---- configuration -------------------------------------------------------------

/// Flat key = value file. '#' starts a comment; blank lines are ignored.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<long> get_long_list(const std::string& key, const std::vector<long>& fallback) const;
  std::vector<double> get_double_list(const std::string& key, const std::vector<double>& fallback) const;

  /// Sorted "key=value" lines.
  std::string canonical() const;
  /// 16 hex digits of FNV-1a over the canonical text.
  std::string hash() const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

std::uint64_t fnv1a(std::string_view s);

}  // namespace rootgas
