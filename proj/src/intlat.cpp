#include "ptlab/intlat.hpp"

#include "ptlab/error.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace ptlab {

namespace {

// Floor division for possibly negative operands.
Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::InvalidArgument, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVec>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error(ErrorCode::InvalidArgument, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

IntVec IntMatrix::row(std::size_t r) const {
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVec IntMatrix::column(std::size_t c) const {
  IntVec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorCode::InvalidArgument, "matrix product shape mismatch");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  return out;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
  if (cols_ != v.size()) throw Error(ErrorCode::InvalidArgument, "matrix-vector shape mismatch");
  IntVec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

IntVec SmithForm::diagonal() const {
  IntVec d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(D(i, i));
  return d;
}

SmithForm snf(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  SmithForm s{IntMatrix::identity(m), M, IntMatrix::identity(n), 0};
  IntMatrix& D = s.D;
  std::size_t t = 0;
  while (t < std::min(m, n)) {
    bool found = false;
    for (;;) {
      // Bring the smallest nonzero entry of the trailing block to (t, t).
      std::size_t bi = 0, bj = 0;
      Int best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int& e = D(i, j);
          if (e != 0 && (best == 0 || abs(e) < best)) {
            best = abs(e);
            bi = i;
            bj = j;
          }
        }
      if (best == 0) break;
      found = true;
      D.swap_rows(t, bi);
      s.U.swap_rows(t, bi);
      D.swap_cols(t, bj);
      s.V.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Int q = D(i, t) / D(t, t);
        D.add_row(i, t, -q);
        s.U.add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Int q = D(t, j) / D(t, t);
        D.add_col(j, t, -q);
        s.V.add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides_all = true;
      for (std::size_t i = t + 1; i < m && divides_all; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.add_row(t, i, 1);
            s.U.add_row(t, i, 1);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (!found) break;
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
    ++t;
  }
  s.rank = t;
  return s;
}

HermiteForm hnf(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  HermiteForm h{M, IntMatrix::identity(m), 0, {}};
  IntMatrix& H = h.H;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    bool any = false;
    for (;;) {
      std::size_t bi = m;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, c) != 0 && (bi == m || abs(H(i, c)) < abs(H(bi, c)))) bi = i;
      if (bi == m) break;
      any = true;
      H.swap_rows(r, bi);
      h.U.swap_rows(r, bi);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        Int q = H(i, c) / H(r, c);
        H.add_row(i, r, -q);
        h.U.add_row(i, r, -q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!any) continue;
    if (H(r, c) < 0) {
      H.negate_row(r);
      h.U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(H(i, c), H(r, c));
      H.add_row(i, r, -q);
      h.U.add_row(i, r, -q);
    }
    h.pivot_cols.push_back(c);
    ++r;
  }
  h.rank = r;
  return h;
}

IntVec hnf_reduce(const HermiteForm& h, IntVec v) {
  if (v.size() != h.H.cols()) throw Error(ErrorCode::InvalidArgument, "hnf_reduce: length mismatch");
  for (std::size_t k = 0; k < h.rank; ++k) {
    const std::size_t c = h.pivot_cols[k];
    Int q = floor_div(v[c], h.H(k, c));
    if (q == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * h.H(k, j);
  }
  return v;
}

std::size_t rank(const IntMatrix& M) { return hnf(M).rank; }

Int determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  IntMatrix A = M;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && A(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      A.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

Int FinAbelianGroup::torsion_order() const {
  Int o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

std::string FinAbelianGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : invariant_factors) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

FinAbelianGroup group_from_diagonal(const IntVec& diag, std::size_t free_rank) {
  FinAbelianGroup g;
  g.free_rank = free_rank;
  for (const auto& d : diag) {
    Int a = abs(d);
    if (a == 0) {
      ++g.free_rank;
    } else if (a > 1) {
      g.invariant_factors.push_back(a);
    }
  }
  std::sort(g.invariant_factors.begin(), g.invariant_factors.end());
  return g;
}

IntMatrix lattice_basis(const IntMatrix& gens) {
  HermiteForm h = hnf(gens.transpose());
  IntMatrix B(gens.rows(), h.rank);
  for (std::size_t k = 0; k < h.rank; ++k)
    for (std::size_t r = 0; r < gens.rows(); ++r) B(r, k) = h.H(k, r);
  return B;
}

LatticeSolver::LatticeSolver(const IntMatrix& gens) : smith_(snf(gens)) {}

std::optional<IntVec> LatticeSolver::solve(const IntVec& v) const {
  const IntMatrix& U = smith_.U;
  if (v.size() != U.cols()) throw Error(ErrorCode::InvalidArgument, "in_lattice: length mismatch");
  IntVec w = U * v;
  const std::size_t n = smith_.V.rows();
  IntVec y(n);
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k < smith_.rank) {
      const Int& d = smith_.D(k, k);
      if (w[k] % d != 0) return std::nullopt;
      y[k] = w[k] / d;
    } else if (w[k] != 0) {
      return std::nullopt;
    }
  }
  return smith_.V * y;
}

std::optional<IntVec> in_lattice(const IntMatrix& gens, const IntVec& v) {
  return LatticeSolver(gens).solve(v);
}

FinAbelianGroup abelian_quotient(const IntMatrix& gens, const IntMatrix& sub_gens) {
  if (gens.rows() != sub_gens.rows())
    throw Error(ErrorCode::InvalidArgument, "abelian_quotient: ambient dimension mismatch");
  IntMatrix B = lattice_basis(gens);
  LatticeSolver solver(B);
  IntMatrix S(B.cols(), sub_gens.cols());
  for (std::size_t j = 0; j < sub_gens.cols(); ++j) {
    auto x = solver.solve(sub_gens.column(j));
    if (!x) throw Error(ErrorCode::SubLatticeNotContained, "column " + std::to_string(j) + " of sub_gens");
    for (std::size_t i = 0; i < B.cols(); ++i) S(i, j) = (*x)[i];
  }
  SmithForm s = snf(S);
  return group_from_diagonal(s.diagonal(), B.cols() - s.rank);
}

Int gcd_of(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, abs(x));
  return g;
}

IntVec primitive(IntVec v) {
  Int g = gcd_of(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace ptlab
