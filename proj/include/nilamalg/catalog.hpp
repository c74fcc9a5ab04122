#ifndef NILAMALG_CATALOG_HPP_
#define NILAMALG_CATALOG_HPP_

// Built-in presentations.  Heisenberg groups use [y, x] = z.

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"
#include "presentation.hpp"

namespace nilamalg {

  // Z/n on one generator (n == 0 gives Z, n == 1 the trivial group).
  inline PresentationPtr make_cyclic(Int const& n, std::string gen = "g", std::string name = "") {
    if (n < 0) {
      throw InvalidArgument("cyclic group order must be non-negative");
    }
    PresentationBuilder b(name.empty() ? "C" + n.str() : name);
    if (n != 1) {
      b.base(std::move(gen), n);
    }
    return b.build();
  }

  inline PresentationPtr make_free_abelian(std::size_t rank) {
    PresentationBuilder b("Z" + std::to_string(rank));
    for (std::size_t i = 0; i < rank; ++i) {
      b.base("a" + std::to_string(i + 1), 0);
    }
    return b.build();
  }

  // The free class-two nilpotent group on x, y (modulus 0), or its quotient
  // with x, y, z all of order `modulus`.
  inline PresentationPtr make_heisenberg(Int const& modulus, std::string name = "") {
    if (modulus < 0 || modulus == 1) {
      throw InvalidArgument("Heisenberg modulus must be 0 or at least 2");
    }
    if (name.empty()) {
      name = modulus == 0 ? "H" : "H" + modulus.str();
    }
    PresentationBuilder b(name);
    b.base("x", modulus).base("y", modulus).central("z", modulus);
    b.comm(1, 0, {1});
    return b.build();
  }

  // r of order 4 (r^2 = z), s of order 2, [s, r] = z.
  inline PresentationPtr make_dihedral8() {
    PresentationBuilder b("D8");
    b.base("r", 2).base("s", 2).central("z", 2);
    b.pow(0, {1});
    b.comm(1, 0, {1});
    return b.build();
  }

  // i^2 = j^2 = [j, i] = z = -1.
  inline PresentationPtr make_quaternion8() {
    PresentationBuilder b("Q8");
    b.base("i", 2).base("j", 2).central("z", 2);
    b.pow(0, {1}).pow(1, {1});
    b.comm(1, 0, {1});
    return b.build();
  }

  // Extraspecial group of order p^3.  For odd p: '+' has exponent p
  // (Heisenberg mod p), '-' is Z/p^2 : Z/p with x^p = z, [x, y] = z.
  // For p = 2: '+' is D8, '-' is Q8.
  inline PresentationPtr make_extraspecial(Int const& p, bool plus) {
    if (p < 2) {
      throw InvalidArgument("extraspecial groups need a prime p");
    }
    for (Int d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        throw InvalidArgument("extraspecial groups need a prime p");
      }
    }
    if (p == 2) {
      return plus ? make_dihedral8() : make_quaternion8();
    }
    if (plus) {
      return make_heisenberg(p, "E" + p.str() + "+");
    }
    PresentationBuilder b("E" + p.str() + "-");
    b.base("x", p).base("y", p).central("z", p);
    b.pow(0, {1});
    b.comm(1, 0, {p - 1});
    return b.build();
  }

  struct CatalogEntry {
    std::string key;
    std::string params;
    std::string description;
  };

  inline std::vector<CatalogEntry> catalog_entries() {
    return {
        {"heisenberg_Z", "", "free class-2 nilpotent group on x, y; z = [y,x]"},
        {"heisenberg_mod", "m", "Heisenberg group with x, y, z of order m (m >= 2)"},
        {"cyclic", "n", "Z/n on generator g (n = 0: Z, n = 1: trivial)"},
        {"free_abelian", "r", "Z^r on a1..ar"},
        {"dihedral8", "", "dihedral group of order 8: r^2 = z, s^2 = e, [s,r] = z"},
        {"quaternion8", "", "quaternion group: i^2 = j^2 = [j,i] = z"},
        {"extraspecial", "p sign", "extraspecial group of order p^3, sign + or -"},
    };
  }

  // Look up a catalog key; params are the integer parameters in order
  // (extraspecial takes p and then 1 for '+' or -1 for '-').
  inline PresentationPtr construct_named(std::string const& key, std::vector<Int> const& params) {
    auto want = [&](std::size_t k) {
      if (params.size() != k) {
        throw InvalidArgument(key + " takes " + std::to_string(k) + " parameter(s)");
      }
    };
    if (key == "heisenberg_Z") {
      want(0);
      return make_heisenberg(0);
    }
    if (key == "heisenberg_mod") {
      want(1);
      if (params[0] < 2) {
        throw InvalidArgument("heisenberg_mod needs m >= 2");
      }
      return make_heisenberg(params[0]);
    }
    if (key == "cyclic") {
      want(1);
      return make_cyclic(params[0]);
    }
    if (key == "free_abelian") {
      want(1);
      if (params[0] < 0) {
        throw InvalidArgument("free_abelian needs r >= 0");
      }
      return make_free_abelian(static_cast<std::size_t>(params[0]));
    }
    if (key == "dihedral8") {
      want(0);
      return make_dihedral8();
    }
    if (key == "quaternion8") {
      want(0);
      return make_quaternion8();
    }
    if (key == "extraspecial") {
      want(2);
      if (params[1] != 1 && params[1] != -1) {
        throw InvalidArgument("extraspecial sign must be 1 or -1");
      }
      return make_extraspecial(params[0], params[1] == 1);
    }
    throw InvalidArgument("unknown catalog key '" + key + "'");
  }

}  // namespace nilamalg

#endif  // NILAMALG_CATALOG_HPP_
