#ifndef NILAMALG_ZLINALG_HPP_
#define NILAMALG_ZLINALG_HPP_

// Exact integer linear algebra over mixed moduli.
//
// An IntMatrix carries one modulus per column; 0 means the column is an
// ordinary integer coordinate, m > 0 means the column lives in Z/m.  The
// row space of such a matrix is the lattice spanned by its rows together
// with the relation vectors m_j * e_j, which is what every routine below
// works with.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"

namespace nilamalg {

  class IntMatrix {
   public:
    IntMatrix() = default;

    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols), moduli_(cols) {}

    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> moduli)
        : rows_(rows), cols_(cols), data_(rows * cols), moduli_(std::move(moduli)) {
      if (moduli_.size() != cols_) {
        throw InvalidArgument("modulus vector length differs from column count");
      }
      for (auto const& m : moduli_) {
        if (m < 0) {
          throw InvalidArgument("negative column modulus");
        }
      }
    }

    static IntMatrix from_rows(std::vector<std::vector<Int>> const& rows,
                               std::vector<Int>                     moduli = {}) {
      std::size_t cols = rows.empty() ? moduli.size() : rows.front().size();
      if (moduli.empty()) {
        moduli.assign(cols, Int(0));
      }
      IntMatrix m(rows.size(), cols, std::move(moduli));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
          throw InvalidArgument("ragged matrix rows");
        }
        for (std::size_t c = 0; c < cols; ++c) {
          m(r, c) = rows[r][c];
        }
      }
      return m;
    }

    static IntMatrix identity(std::size_t n) {
      IntMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
      }
      return m;
    }

    std::size_t rows() const noexcept {
      return rows_;
    }
    std::size_t cols() const noexcept {
      return cols_;
    }

    Int& operator()(std::size_t r, std::size_t c) {
      return data_[r * cols_ + c];
    }
    Int const& operator()(std::size_t r, std::size_t c) const {
      return data_[r * cols_ + c];
    }

    std::vector<Int> const& moduli() const noexcept {
      return moduli_;
    }

    bool has_moduli() const {
      for (auto const& m : moduli_) {
        if (m != 0) {
          return true;
        }
      }
      return false;
    }

    std::vector<Int> row(std::size_t r) const {
      return std::vector<Int>(data_.begin() + r * cols_,
                              data_.begin() + (r + 1) * cols_);
    }

    void append_row(std::vector<Int> const& v) {
      if (v.size() != cols_) {
        throw InvalidArgument("row length differs from column count");
      }
      data_.insert(data_.end(), v.begin(), v.end());
      ++rows_;
    }

    bool row_is_zero(std::size_t r) const {
      for (std::size_t c = 0; c < cols_; ++c) {
        if ((*this)(r, c) != 0) {
          return false;
        }
      }
      return true;
    }

    // Reduce every entry of a modulus column into [0, m).
    void reduce() {
      for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
          if (moduli_[c] != 0) {
            (*this)(r, c) = mod_floor((*this)(r, c), moduli_[c]);
          }
        }
      }
    }

    bool operator==(IntMatrix const& that) const {
      return rows_ == that.rows_ && cols_ == that.cols_ && data_ == that.data_
             && moduli_ == that.moduli_;
    }

    std::string to_string() const {
      std::string out = "[";
      for (std::size_t r = 0; r < rows_; ++r) {
        out += (r == 0 ? "[" : ", [");
        for (std::size_t c = 0; c < cols_; ++c) {
          out += (c == 0 ? "" : ", ") + (*this)(r, c).str();
        }
        out += "]";
      }
      return out + "]";
    }

   private:
    std::size_t      rows_ = 0;
    std::size_t      cols_ = 0;
    std::vector<Int> data_;
    std::vector<Int> moduli_;
  };

  namespace detail {
    // r_a <- s*r_a + t*r_b,  r_b <- u*r_a + v*r_b  (simultaneously)
    inline void combine_rows(IntMatrix&  m,
                             std::size_t a,
                             std::size_t b,
                             Int const&  s,
                             Int const&  t,
                             Int const&  u,
                             Int const&  v) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        Int x   = m(a, c);
        Int y   = m(b, c);
        m(a, c) = s * x + t * y;
        m(b, c) = u * x + v * y;
      }
    }

    inline void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, Int const& k) {
      if (k == 0) {
        return;
      }
      for (std::size_t c = 0; c < m.cols(); ++c) {
        m(dst, c) += k * m(src, c);
      }
    }

    // The rows of M followed by the relation rows m_j * e_j.
    inline IntMatrix augmented(IntMatrix const& m) {
      IntMatrix out(0, m.cols());
      for (std::size_t r = 0; r < m.rows(); ++r) {
        out.append_row(m.row(r));
      }
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (m.moduli()[c] != 0) {
          std::vector<Int> e(m.cols());
          e[c] = m.moduli()[c];
          out.append_row(e);
        }
      }
      return out;
    }

    inline std::size_t pivot_column(IntMatrix const& h, std::size_t r) {
      for (std::size_t c = 0; c < h.cols(); ++c) {
        if (h(r, c) != 0) {
          return c;
        }
      }
      return h.cols();
    }
  }  // namespace detail

  struct HermiteResult {
    // Row-style HNF of the augmented matrix (rows of M, then one relation
    // row per modulus column).  Zero rows are kept at the bottom.
    IntMatrix H;
    // Unimodular, H == U * augmented(M).  Without moduli this is U * M.
    IntMatrix U;
    // Number of leading rows of H that are nonzero.
    std::size_t rank = 0;
  };

  inline HermiteResult hermite_normal_form(IntMatrix const& m) {
    IntMatrix   a = detail::augmented(m);
    std::size_t n = a.rows();
    IntMatrix   u = IntMatrix::identity(n);
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < n; ++c) {
      for (std::size_t i = r + 1; i < n; ++i) {
        if (a(i, c) == 0) {
          continue;
        }
        auto [g, s, t] = ext_gcd(a(r, c), a(i, c));
        Int p          = a(r, c) / g;
        Int q          = a(i, c) / g;
        detail::combine_rows(a, r, i, s, t, -q, p);
        detail::combine_rows(u, r, i, s, t, -q, p);
      }
      if (a(r, c) == 0) {
        continue;
      }
      if (a(r, c) < 0) {
        detail::combine_rows(a, r, r, -1, 0, -1, 0);
        detail::combine_rows(u, r, r, -1, 0, -1, 0);
      }
      for (std::size_t i = 0; i < r; ++i) {
        Int k = -div_floor(a(i, c), a(r, c));
        detail::add_row_multiple(a, i, r, k);
        detail::add_row_multiple(u, i, r, k);
      }
      ++r;
    }
    IntMatrix h(a.rows(), a.cols(), m.moduli());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t c = 0; c < a.cols(); ++c) {
        h(i, c) = a(i, c);
      }
    }
    return {std::move(h), std::move(u), r};
  }

  // The nonzero rows of the HNF: a canonical basis of the row lattice.
  inline IntMatrix lattice_basis(IntMatrix const& m) {
    auto      res = hermite_normal_form(m);
    IntMatrix out(0, m.cols(), m.moduli());
    for (std::size_t r = 0; r < res.rank; ++r) {
      out.append_row(res.H.row(r));
    }
    return out;
  }

  // Rows generating { x in Z^rows : x * M == 0 under the column moduli }.
  inline IntMatrix left_kernel(IntMatrix const& m) {
    auto      res = hermite_normal_form(m);
    IntMatrix k(0, m.rows());
    for (std::size_t r = res.rank; r < res.H.rows(); ++r) {
      std::vector<Int> v(m.rows());
      for (std::size_t c = 0; c < m.rows(); ++c) {
        v[c] = res.U(r, c);
      }
      k.append_row(v);
    }
    return k;
  }

  // Forward substitution against an echelon basis (rows of H, no zero rows
  // in the middle): coefficients y with y * H == target exactly, if any.
  inline std::optional<std::vector<Int>> solve_echelon(IntMatrix const&        h,
                                                       std::vector<Int> const& target) {
    if (target.size() != h.cols()) {
      throw InvalidArgument("target length differs from column count");
    }
    std::vector<Int> residual = target;
    std::vector<Int> y(h.rows());
    for (std::size_t r = 0; r < h.rows(); ++r) {
      std::size_t p = detail::pivot_column(h, r);
      if (p == h.cols()) {
        continue;
      }
      if (residual[p] % h(r, p) != 0) {
        return std::nullopt;
      }
      y[r] = residual[p] / h(r, p);
      if (y[r] != 0) {
        for (std::size_t c = p; c < h.cols(); ++c) {
          residual[c] -= y[r] * h(r, c);
        }
      }
    }
    for (auto const& x : residual) {
      if (x != 0) {
        return std::nullopt;
      }
    }
    return y;
  }

  struct LatticeReduction {
    std::vector<Int> remainder;     // canonical representative of v + L
    std::vector<Int> coefficients;  // v == coefficients * H + remainder
  };

  // Canonical coset representative of v modulo the row lattice of the HNF
  // basis H: each pivot entry is brought into [0, pivot).
  inline LatticeReduction reduce_mod_lattice(IntMatrix const& h, std::vector<Int> v) {
    if (v.size() != h.cols()) {
      throw InvalidArgument("vector length differs from column count");
    }
    std::vector<Int> y(h.rows());
    for (std::size_t r = 0; r < h.rows(); ++r) {
      std::size_t p = detail::pivot_column(h, r);
      if (p == h.cols()) {
        continue;
      }
      y[r] = div_floor(v[p], h(r, p));
      if (y[r] != 0) {
        for (std::size_t c = p; c < h.cols(); ++c) {
          v[c] -= y[r] * h(r, c);
        }
      }
    }
    return {std::move(v), std::move(y)};
  }

  // Some x with x * M == target under the column moduli (plain integer
  // equality in modulus-0 columns), or nullopt.
  inline std::optional<std::vector<Int>> solve_mod_system(IntMatrix const&        m,
                                                          std::vector<Int> const& target) {
    if (target.size() != m.cols()) {
      throw InvalidArgument("target length differs from column count");
    }
    auto      res = hermite_normal_form(m);
    IntMatrix basis(0, m.cols());
    for (std::size_t r = 0; r < res.rank; ++r) {
      basis.append_row(res.H.row(r));
    }
    std::vector<Int> t = target;
    for (std::size_t c = 0; c < t.size(); ++c) {
      if (m.moduli()[c] != 0) {
        t[c] = mod_floor(t[c], m.moduli()[c]);
      }
    }
    auto y = solve_echelon(basis, t);
    if (!y) {
      return std::nullopt;
    }
    std::vector<Int> x(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t r = 0; r < res.rank; ++r) {
        x[i] += (*y)[r] * res.U(r, i);
      }
    }
    return x;
  }

  // Generators of the intersection of the row lattices of two HNF bases
  // with the same column moduli (both lattices contain the moduli).
  inline IntMatrix lattice_intersection(IntMatrix const& s, IntMatrix const& t) {
    if (s.cols() != t.cols()) {
      throw InvalidArgument("column counts differ");
    }
    IntMatrix stacked(0, s.cols());
    for (std::size_t r = 0; r < s.rows(); ++r) {
      stacked.append_row(s.row(r));
    }
    for (std::size_t r = 0; r < t.rows(); ++r) {
      auto v = t.row(r);
      for (auto& x : v) {
        x = -x;
      }
      stacked.append_row(v);
    }
    IntMatrix kernel = left_kernel(stacked);
    IntMatrix out(0, s.cols(), s.moduli());
    for (std::size_t k = 0; k < kernel.rows(); ++k) {
      std::vector<Int> v(s.cols());
      for (std::size_t r = 0; r < s.rows(); ++r) {
        if (kernel(k, r) != 0) {
          for (std::size_t c = 0; c < s.cols(); ++c) {
            v[c] += kernel(k, r) * s(r, c);
          }
        }
      }
      out.append_row(v);
    }
    return lattice_basis(out);
  }

}  // namespace nilamalg

#endif  // NILAMALG_ZLINALG_HPP_
