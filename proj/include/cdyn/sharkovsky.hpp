#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "cdyn/errors.hpp"

namespace cdyn {

/// An element of N u {2^inf} under the Sharkovsky order
///   3 > 5 > 7 > ... > 2*3 > 2*5 > ... > 4*3 > ... > 2^inf > ... > 4 > 2 > 1.
class SharkovskyNumber {
 public:
  static SharkovskyNumber finite(std::uint64_t m) {
    if (m == 0) throw Error(ErrorKind::DegenerateInput, "Sharkovsky numbers are positive");
    return SharkovskyNumber(m);
  }
  static SharkovskyNumber two_infinity() { return SharkovskyNumber(0); }

  bool is_two_infinity() const { return m_ == 0; }
  std::uint64_t value() const { return m_; }

  /// m = 2^power * odd.
  unsigned power_of_two() const {
    unsigned p = 0;
    for (std::uint64_t m = m_; m % 2 == 0; m /= 2) ++p;
    return p;
  }
  std::uint64_t odd_part() const { return m_ >> power_of_two(); }

  std::string str() const { return is_two_infinity() ? "2^inf" : std::to_string(m_); }

  friend bool operator==(const SharkovskyNumber& a, const SharkovskyNumber& b) { return a.m_ == b.m_; }

 private:
  explicit SharkovskyNumber(std::uint64_t m) : m_(m) {}
  std::uint64_t m_;  // 0 encodes 2^inf
};

/// a strictly precedes b (a > b in the Sharkovsky order).
inline bool sharkovsky_greater(const SharkovskyNumber& a, const SharkovskyNumber& b) {
  if (a == b) return false;
  // Rank: non-powers of two (odd part > 1) come first, grouped by the power of
  // two and ordered by odd part; then 2^inf; then powers of two descending.
  auto tier = [](const SharkovskyNumber& s) {
    if (s.is_two_infinity()) return 1;
    return s.odd_part() > 1 ? 0 : 2;
  };
  int ta = tier(a), tb = tier(b);
  if (ta != tb) return ta < tb;
  if (ta == 0) {
    if (a.power_of_two() != b.power_of_two()) return a.power_of_two() < b.power_of_two();
    return a.odd_part() < b.odd_part();
  }
  return a.value() > b.value();  // both powers of two
}

/// a >= b.
inline bool sharkovsky_geq(const SharkovskyNumber& a, const SharkovskyNumber& b) {
  return a == b || sharkovsky_greater(a, b);
}

/// m in S(a) = {m : a >= m}.
inline bool tail_contains(const SharkovskyNumber& a, const SharkovskyNumber& m) {
  return sharkovsky_geq(a, m);
}

inline std::ostream& operator<<(std::ostream& os, const SharkovskyNumber& s) { return os << s.str(); }

}  // namespace cdyn
