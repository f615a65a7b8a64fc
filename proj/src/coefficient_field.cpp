#include "besov/coefficient_field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "besov/dyadic.hpp"

namespace besov {

CoefficientField::CoefficientField(int dim) : dim_(dim) {
  if (dim < 1 || dim > 16) throw std::invalid_argument("field dimension out of range");
}

void CoefficientField::check_offset(const Offset& offset) const {
  if (static_cast<int>(offset.size()) != dim_)
    throw std::invalid_argument("offset dimension mismatch");
}

namespace {

void check_value(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite coefficient");
}

}  // namespace

void CoefficientField::set_scaling(const Offset& offset, double value) {
  check_offset(offset);
  check_value(value);
  if (value == 0.0)
    scaling_.erase(offset);
  else
    scaling_[offset] = value;
}

void CoefficientField::add_scaling(const Offset& offset, double value) {
  set_scaling(offset, scaling(offset) + value);
}

void CoefficientField::set_wavelet(int type, int level, const Offset& offset,
                                   double value) {
  check_offset(offset);
  check_value(value);
  if (type < 1 || type > num_types()) throw std::invalid_argument("wavelet type out of range");
  if (level < 0 || level > kMaxLevel) throw std::invalid_argument("wavelet level out of range");
  auto key = std::make_pair(type, offset);
  if (value == 0.0) {
    auto it = levels_.find(level);
    if (it != levels_.end()) {
      it->second.erase(key);
      if (it->second.empty()) levels_.erase(it);
    }
  } else {
    levels_[level][std::move(key)] = value;
  }
}

void CoefficientField::add_wavelet(int type, int level, const Offset& offset,
                                   double value) {
  set_wavelet(type, level, offset, wavelet(type, level, offset) + value);
}

double CoefficientField::scaling(const Offset& offset) const {
  auto it = scaling_.find(offset);
  return it == scaling_.end() ? 0.0 : it->second;
}

double CoefficientField::wavelet(int type, int level, const Offset& offset) const {
  auto lvl = levels_.find(level);
  if (lvl == levels_.end()) return 0.0;
  auto it = lvl->second.find(std::make_pair(type, offset));
  return it == lvl->second.end() ? 0.0 : it->second;
}

std::size_t CoefficientField::wavelet_count() const {
  std::size_t total = 0;
  for (const auto& [lvl, entries] : levels_) total += entries.size();
  return total;
}

int CoefficientField::max_level() const {
  return levels_.empty() ? -1 : levels_.rbegin()->first;
}

bool CoefficientField::support_box(Offset& lo, Offset& hi) const {
  bool any = false;
  lo.assign(dim_, 0);
  hi.assign(dim_, 0);
  auto absorb = [&](const Offset& cell) {
    if (!any) {
      lo = cell;
      hi = cell;
      for (auto& h : hi) ++h;
      any = true;
      return;
    }
    for (int i = 0; i < dim_; ++i) {
      lo[i] = std::min(lo[i], cell[i]);
      hi[i] = std::max(hi[i], cell[i] + 1);
    }
  };
  Offset cell(dim_);
  for (const auto& [off, v] : scaling_) absorb(off);
  for (const auto& [lvl, entries] : levels_) {
    for (const auto& [key, v] : entries) {
      for (int i = 0; i < dim_; ++i) cell[i] = floor_shift(key.second[i], lvl);
      absorb(cell);
    }
  }
  return any;
}

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_coefficients_csv(const CoefficientField& field, std::ostream& os) {
  os << "kind,i,j";
  for (int i = 1; i <= field.dim(); ++i) os << ",m" << i;
  os << ",value\n";
  for (const auto& [off, v] : field.scaling_entries()) {
    os << "scaling,,";
    for (long long m : off) os << "," << m;
    os << "," << format_value(v) << "\n";
  }
  for (const auto& [lvl, entries] : field.wavelet_levels()) {
    for (const auto& [key, v] : entries) {
      os << "wavelet," << key.first << "," << lvl;
      for (long long m : key.second) os << "," << m;
      os << "," << format_value(v) << "\n";
    }
  }
}

void write_coefficients_csv_file(const CoefficientField& field, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open " + path);
  write_coefficients_csv(field, os);
}

CoefficientField read_coefficients_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty coefficient CSV");
  auto header = split_csv_line(line);
  if (header.size() < 5 || header[0] != "kind" || header[1] != "i" || header[2] != "j" ||
      header.back() != "value")
    throw std::invalid_argument("bad coefficient CSV header");
  const int dim = static_cast<int>(header.size()) - 4;
  CoefficientField field(dim);

  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cols = split_csv_line(line);
    if (cols.size() != header.size())
      throw std::invalid_argument("row " + std::to_string(lineno) + ": wrong column count");
    CoefficientField::Offset off(dim);
    for (int i = 0; i < dim; ++i) off[i] = std::stoll(cols[3 + i]);
    double value = std::stod(cols.back());
    if (cols[0] == "scaling") {
      field.add_scaling(off, value);
    } else if (cols[0] == "wavelet") {
      field.add_wavelet(std::stoi(cols[1]), std::stoi(cols[2]), off, value);
    } else {
      throw std::invalid_argument("row " + std::to_string(lineno) + ": unknown kind " + cols[0]);
    }
  }
  return field;
}

CoefficientField read_coefficients_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open " + path);
  return read_coefficients_csv(is);
}

}  // namespace besov
