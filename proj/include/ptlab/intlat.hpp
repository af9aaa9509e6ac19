// Exact integer matrices, Smith/Hermite normal forms and finitely generated
// abelian groups.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ptlab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);
  // Columns are given as vectors of length `rows`.
  static IntMatrix from_columns(const std::vector<IntVec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVec row(std::size_t r) const;
  IntVec column(std::size_t c) const;
  IntMatrix transpose() const;

  IntMatrix operator*(const IntMatrix& other) const;
  IntVec operator*(const IntVec& v) const;
  bool operator==(const IntMatrix& other) const = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& k);
  // col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& k);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;

  // Nonzero diagonal entries d_1 | d_2 | ... | d_rank.
  IntVec diagonal() const;
};

// U * M * V = D with U, V unimodular.
SmithForm snf(const IntMatrix& M);

// Row-style Hermite normal form: H = U * M is in echelon form with positive
// pivots and entries above each pivot reduced into [0, pivot).
struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

HermiteForm hnf(const IntMatrix& M);

// Reduce v against the rows of an HNF; returns the remainder.
IntVec hnf_reduce(const HermiteForm& h, IntVec v);

std::size_t rank(const IntMatrix& M);
Int determinant(const IntMatrix& M);

struct FinAbelianGroup {
  std::size_t free_rank = 0;
  IntVec invariant_factors;

  Int torsion_order() const;
  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool is_finite() const { return free_rank == 0; }
  bool operator==(const FinAbelianGroup&) const = default;
  std::string to_string() const;
};

// Builds the group from the nonzero SNF diagonal of a relation matrix plus
// extra free rank.
FinAbelianGroup group_from_diagonal(const IntVec& diag, std::size_t free_rank);

// Basis (as columns) of the lattice spanned by the columns of gens.
IntMatrix lattice_basis(const IntMatrix& gens);

// Solves gens * x = v over Z; the SNF of gens is computed once.
class LatticeSolver {
 public:
  LatticeSolver() = default;
  explicit LatticeSolver(const IntMatrix& gens);

  std::optional<IntVec> solve(const IntVec& v) const;
  bool contains(const IntVec& v) const { return solve(v).has_value(); }
  std::size_t ambient() const { return smith_.U.rows(); }

 private:
  SmithForm smith_;
};

// Coefficients x with gens * x = v, or nullopt if v is not in the lattice.
std::optional<IntVec> in_lattice(const IntMatrix& gens, const IntVec& v);

// (lattice of gens) / (lattice of sub_gens).
FinAbelianGroup abelian_quotient(const IntMatrix& gens, const IntMatrix& sub_gens);

Int gcd_of(const IntVec& v);
// Divides by the gcd of the entries; the zero vector is returned unchanged.
IntVec primitive(IntVec v);
Int dot(const IntVec& a, const IntVec& b);

}  // namespace ptlab
