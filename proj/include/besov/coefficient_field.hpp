#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace besov {

// Finitely supported coefficient array over the inhomogeneous Haar index
// set on R^n: one scaling layer (level 0) plus wavelet layers with type
// i in [1, 2^n - 1] and level j >= 0. Absent entries read as zero; storing
// an exact zero erases the entry. Non-finite values are rejected on entry.
class CoefficientField {
 public:
  using Offset = std::vector<long long>;
  // Per-level wavelet entries keyed by (type, offset).
  using LevelEntries = std::map<std::pair<int, Offset>, double>;

  explicit CoefficientField(int dim);

  int dim() const { return dim_; }
  int num_types() const { return (1 << dim_) - 1; }

  void set_scaling(const Offset& offset, double value);
  void add_scaling(const Offset& offset, double value);
  void set_wavelet(int type, int level, const Offset& offset, double value);
  void add_wavelet(int type, int level, const Offset& offset, double value);

  double scaling(const Offset& offset) const;
  double wavelet(int type, int level, const Offset& offset) const;

  std::size_t scaling_count() const { return scaling_.size(); }
  std::size_t wavelet_count() const;
  // Deepest wavelet level present, or -1 for none.
  int max_level() const;

  const std::map<Offset, double>& scaling_entries() const { return scaling_; }
  const std::map<int, LevelEntries>& wavelet_levels() const { return levels_; }

  // Bounding box of the support in level-0 cell coordinates (half-open).
  // Returns false when the field is empty.
  bool support_box(Offset& lo, Offset& hi) const;

 private:
  void check_offset(const Offset& offset) const;

  int dim_;
  std::map<Offset, double> scaling_;
  std::map<int, LevelEntries> levels_;
};

// CSV layout: header "kind,i,j,m1,...,mn,value"; one row per entry.
// Scaling rows leave the i and j columns empty. Values round-trip exactly.
void write_coefficients_csv(const CoefficientField& field, std::ostream& os);
void write_coefficients_csv_file(const CoefficientField& field, const std::string& path);
CoefficientField read_coefficients_csv(std::istream& is);
CoefficientField read_coefficients_csv_file(const std::string& path);

}  // namespace besov
