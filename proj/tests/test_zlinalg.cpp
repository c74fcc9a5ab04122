#include <catch_amalgamated.hpp>

#include <random>

#include <nilamalg/zlinalg.hpp>

using namespace nilamalg;

namespace {

  using Rows = std::vector<std::vector<Int>>;

  Int det(std::vector<std::vector<Int>> const& a) {
    std::size_t n = a.size();
    if (n == 0) {
      return 1;
    }
    if (n == 1) {
      return a[0][0];
    }
    Int out = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (a[0][c] == 0) {
        continue;
      }
      std::vector<std::vector<Int>> minor;
      for (std::size_t r = 1; r < n; ++r) {
        std::vector<Int> row;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != c) {
            row.push_back(a[r][k]);
          }
        }
        minor.push_back(row);
      }
      Int term = a[0][c] * det(minor);
      out += (c % 2 == 0) ? term : Int(-term);
    }
    return out;
  }

  std::vector<std::vector<Int>> rows_of(IntMatrix const& m) {
    std::vector<std::vector<Int>> out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      out.push_back(m.row(r));
    }
    return out;
  }

  // M with one relation row m_c e_c appended per modulus column
  IntMatrix augmented(IntMatrix const& m) {
    IntMatrix a(0, m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      a.append_row(m.row(r));
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.moduli()[c] != 0) {
        std::vector<Int> e(m.cols());
        e[c] = m.moduli()[c];
        a.append_row(e);
      }
    }
    return a;
  }

  IntMatrix product(IntMatrix const& u, IntMatrix const& m) {
    IntMatrix out(u.rows(), m.cols());
    for (std::size_t i = 0; i < u.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t k = 0; k < u.cols(); ++k) {
          out(i, j) += u(i, k) * m(k, j);
        }
      }
    }
    return out;
  }

  bool is_hnf(IntMatrix const& h, std::size_t rank) {
    std::size_t last = 0;
    for (std::size_t r = 0; r < h.rows(); ++r) {
      std::size_t p = 0;
      while (p < h.cols() && h(r, p) == 0) {
        ++p;
      }
      if (r >= rank) {
        if (p != h.cols()) {
          return false;
        }
        continue;
      }
      if (p == h.cols() || h(r, p) <= 0 || (r > 0 && p <= last)) {
        return false;
      }
      for (std::size_t i = 0; i < r; ++i) {
        if (h(i, p) < 0 || h(i, p) >= h(r, p)) {
          return false;
        }
      }
      last = p;
    }
    return true;
  }

  IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols,
                          std::vector<Int> moduli = {}) {
    Rows r(rows, std::vector<Int>(cols));
    for (auto& row : r) {
      for (auto& x : row) {
        x = static_cast<int>(rng() % 13) - 6;
      }
    }
    return IntMatrix::from_rows(r, std::move(moduli));
  }

}  // namespace

TEST_CASE("hermite normal form examples", "[zlinalg]") {
  auto a = hermite_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(a.H == IntMatrix::from_rows({{2, 0}, {0, 3}}));
  auto b = hermite_normal_form(IntMatrix::from_rows({{1, 2}, {2, 4}}));
  CHECK(b.H == IntMatrix::from_rows({{1, 2}, {0, 0}}));
  CHECK(b.rank == 1);
  auto c = hermite_normal_form(IntMatrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(c.H == IntMatrix::from_rows({{1, 0}, {0, 1}}));
  auto d = hermite_normal_form(IntMatrix::from_rows({{4, 6}, {6, 9}, {2, 1}}));
  CHECK(d.rank == 2);
  CHECK(d.H.row(0) == std::vector<Int>{2, 1});
  CHECK(d.H.row(1) == std::vector<Int>{0, 2});
}

TEST_CASE("hermite normal form properties", "[zlinalg]") {
  std::mt19937 rng(3);
  for (int k = 0; k < 300; ++k) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 4;
    std::vector<Int> moduli(cols);
    if (k % 2 == 1) {
      for (auto& m : moduli) {
        m = static_cast<int>(rng() % 5);
      }
    }
    IntMatrix m   = random_matrix(rng, rows, cols, moduli);
    auto      res = hermite_normal_form(m);
    INFO(m.to_string());
    REQUIRE(is_hnf(res.H, res.rank));
    IntMatrix uh = product(res.U, augmented(m));
    for (std::size_t r = 0; r < uh.rows(); ++r) {
      REQUIRE(uh.row(r) == res.H.row(r));
    }
    if (res.U.rows() <= 6) {
      Int d = det(rows_of(res.U));
      REQUIRE((d == 1 || d == -1));
    }
    // idempotent
    IntMatrix basis = lattice_basis(m);
    REQUIRE(lattice_basis(basis) == basis);
  }
}

TEST_CASE("solve_mod_system examples", "[zlinalg]") {
  auto id = IntMatrix::identity(3);
  CHECK(solve_mod_system(id, {4, -1, 7}) == std::vector<Int>{4, -1, 7});
  CHECK_FALSE(solve_mod_system(IntMatrix::from_rows({{2}}), {3}));
  auto sol = solve_mod_system(IntMatrix::from_rows({{2}}, {4}), {0});
  REQUIRE(sol);
  CHECK(mod_floor((*sol)[0] * 2, 4) == 0);
  CHECK_THROWS_AS(solve_mod_system(id, {1, 2}), InvalidArgument);
}

TEST_CASE("solve_mod_system agrees with enumeration", "[zlinalg]") {
  std::mt19937 rng(5);
  int          solvable = 0;
  for (int k = 0; k < 200; ++k) {
    std::size_t      rows = 1 + rng() % 3, cols = 1 + rng() % 3;
    std::vector<Int> moduli(cols);
    for (auto& m : moduli) {
      m = 2 + static_cast<int>(rng() % 5);
    }
    IntMatrix        m = random_matrix(rng, rows, cols, moduli);
    std::vector<Int> target(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      target[c] = static_cast<int>(rng() % 7);
    }
    // x_i mod lcm of moduli determines x*M, so search x in [0, L)^rows
    Int L = 1;
    for (auto const& q : moduli) {
      L = lcm(L, q);
    }
    std::size_t space = 1;
    for (std::size_t i = 0; i < rows; ++i) {
      space *= static_cast<std::size_t>(L);
    }
    if (space > 10000) {
      continue;
    }
    auto good = [&](std::vector<Int> const& x) {
      for (std::size_t c = 0; c < cols; ++c) {
        Int s = 0;
        for (std::size_t i = 0; i < rows; ++i) {
          s += x[i] * m(i, c);
        }
        if (mod_floor(s - target[c], moduli[c]) != 0) {
          return false;
        }
      }
      return true;
    };
    bool             exists = false;
    std::vector<Int> x(rows);
    for (std::size_t t = 0; t < space && !exists; ++t) {
      std::size_t v = t;
      for (std::size_t i = 0; i < rows; ++i) {
        x[i] = static_cast<long>(v % static_cast<std::size_t>(L));
        v /= static_cast<std::size_t>(L);
      }
      exists = good(x);
    }
    auto sol = solve_mod_system(m, target);
    INFO(m.to_string());
    REQUIRE(bool(sol) == exists);
    if (sol) {
      ++solvable;
      REQUIRE(good(*sol));
    }
  }
  CHECK(solvable > 0);
}

TEST_CASE("kernels, reduction, intersection", "[zlinalg]") {
  std::mt19937 rng(9);
  for (int k = 0; k < 200; ++k) {
    std::size_t      rows = 1 + rng() % 4, cols = 1 + rng() % 3;
    std::vector<Int> moduli(cols);
    for (auto& m : moduli) {
      m = static_cast<int>(rng() % 4);
    }
    IntMatrix m  = random_matrix(rng, rows, cols, moduli);
    IntMatrix kn = left_kernel(m);
    for (std::size_t r = 0; r < kn.rows(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        Int s = 0;
        for (std::size_t i = 0; i < rows; ++i) {
          s += kn(r, i) * m(i, c);
        }
        REQUIRE((moduli[c] == 0 ? s == 0 : mod_floor(s, moduli[c]) == 0));
      }
    }

    IntMatrix        h = lattice_basis(m);
    std::vector<Int> v(cols), w(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      v[c] = static_cast<int>(rng() % 21) - 10;
    }
    w = v;
    for (std::size_t r = 0; r < h.rows(); ++r) {
      Int t = static_cast<int>(rng() % 7) - 3;
      for (std::size_t c = 0; c < cols; ++c) {
        w[c] += t * h(r, c);
      }
    }
    auto rv = reduce_mod_lattice(h, v);
    REQUIRE(reduce_mod_lattice(h, w).remainder == rv.remainder);
    std::vector<Int> back = rv.remainder;
    for (std::size_t r = 0; r < h.rows(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        back[c] += rv.coefficients[r] * h(r, c);
      }
    }
    REQUIRE(back == v);
  }

  // Z^2: <(2,0),(0,3)> meet <(3,0),(0,2)> = <(6,0),(0,6)>
  auto s = lattice_basis(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  auto t = lattice_basis(IntMatrix::from_rows({{3, 0}, {0, 2}}));
  CHECK(lattice_intersection(s, t) == IntMatrix::from_rows({{6, 0}, {0, 6}}));
  // with modulus 4 in both columns: <(2,0)> + 4Z^2 meet <(0,2)> + 4Z^2
  auto s4 = lattice_basis(IntMatrix::from_rows({{2, 0}}, {4, 4}));
  auto t4 = lattice_basis(IntMatrix::from_rows({{0, 2}}, {4, 4}));
  CHECK(lattice_intersection(s4, t4) == IntMatrix::from_rows({{4, 0}, {0, 4}}, {4, 4}));
}
