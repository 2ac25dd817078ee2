#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace oddcolor {

using Rational = boost::multiprecision::cpp_rational;

inline auto q(long num, long den = 1) -> Rational { return Rational(num, den); }

inline auto to_string(const Rational& r) -> std::string {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  return numerator(r).str() + "/" + denominator(r).str();
}

enum class RuleSet { odd, pcf };

// Charge constants of the two rule systems.
namespace odd_rules {
inline auto v1() -> Rational { return q(5, 6); }    // to t3-neighbors
inline auto v2() -> Rational { return q(2, 3); }    // to t2-neighbors
inline auto v3() -> Rational { return q(1, 3); }    // to t1-neighbors
inline auto v4() -> Rational { return q(1, 5); }    // to 2-neighbors of worst/bad 3-neighbors
inline auto v5() -> Rational { return q(1, 10); }   // to 2-neighbors of s-bad 3-neighbors
inline auto f1() -> Rational { return q(2, 3); }    // good 2-vertex
inline auto f2() -> Rational { return q(11, 15); }  // bad 2-vertex
inline auto f3() -> Rational { return q(4, 5); }    // worst 2-vertex
inline auto f4() -> Rational { return q(2, 3); }    // 2-thread vertex
inline auto f5_end() -> Rational { return q(7, 12); }
inline auto f5_mid() -> Rational { return q(1); }
}  // namespace odd_rules

namespace pcf_rules {
inline auto v1() -> Rational { return q(1); }     // to t3-neighbors
inline auto v2() -> Rational { return q(1); }     // to supported t2-neighbors
inline auto v3() -> Rational { return q(1, 2); }  // to unsupported t2-neighbors
inline auto f1() -> Rational { return q(1); }     // 1-thread vertex
inline auto f2_supported() -> Rational { return q(1, 2); }
inline auto f2_unsupported() -> Rational { return q(3, 4); }
inline auto f3_end() -> Rational { return q(1, 2); }
inline auto f3_mid() -> Rational { return q(1); }
}  // namespace pcf_rules

}  // namespace oddcolor
