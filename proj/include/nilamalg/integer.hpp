#ifndef NILAMALG_INTEGER_HPP_
#define NILAMALG_INTEGER_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nilamalg {

  using Int = boost::multiprecision::cpp_int;

  // Floor division and the matching non-negative remainder (for m > 0).
  inline Int div_floor(Int const& a, Int const& m) {
    Int q = a / m;
    if ((a % m != 0) && ((a < 0) != (m < 0))) {
      --q;
    }
    return q;
  }

  inline Int mod_floor(Int const& a, Int const& m) {
    Int r = a % m;
    if (r < 0) {
      r += (m < 0 ? -m : m);
    }
    return r;
  }

  inline Int abs(Int const& a) {
    return a < 0 ? Int(-a) : a;
  }

  struct ExtGcd {
    Int g;  // non-negative
    Int s;
    Int t;  // s*a + t*b == g
  };

  inline ExtGcd ext_gcd(Int const& a, Int const& b) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
      Int q = old_r / r;
      Int tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s;
      old_s = s;
      s = tmp;
      tmp = old_t - q * t;
      old_t = t;
      t = tmp;
    }
    if (old_r < 0) {
      old_r = -old_r;
      old_s = -old_s;
      old_t = -old_t;
    }
    return {old_r, old_s, old_t};
  }

  inline Int gcd(Int const& a, Int const& b) {
    return ext_gcd(a, b).g;
  }

  // lcm with the convention lcm(0, x) == 0.
  inline Int lcm(Int const& a, Int const& b) {
    if (a == 0 || b == 0) {
      return 0;
    }
    return abs(a / gcd(a, b) * b);
  }

  inline std::string to_string(Int const& a) {
    return a.str();
  }

  inline std::size_t hash_value(Int const& a) {
    return std::hash<Int>{}(a);
  }

  inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  }

  inline std::size_t hash_range(std::vector<Int> const& v,
                                std::size_t        seed = 0) {
    for (auto const& x : v) {
      seed = hash_combine(seed, hash_value(x));
    }
    return seed;
  }

}  // namespace nilamalg

#endif  // NILAMALG_INTEGER_HPP_
