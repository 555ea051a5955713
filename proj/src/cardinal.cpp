#include "propcalc/cardinal.hpp"

#include "propcalc/error.hpp"

namespace propcalc {

std::uint64_t Cardinal::value() const {
  if (infinite_) throw Error("aleph0 has no finite value");
  return value_;
}

Cardinal Cardinal::minus(std::uint64_t n) const {
  if (infinite_) return *this;
  if (n > value_) throw Error("cardinal subtraction underflow");
  return Cardinal(value_ - n);
}

std::string Cardinal::to_string() const {
  return infinite_ ? std::string("aleph0") : std::to_string(value_);
}

Cardinal operator+(Cardinal a, Cardinal b) {
  if (a.infinite_ || b.infinite_) return Cardinal::aleph0();
  std::uint64_t sum = 0;
  if (__builtin_add_overflow(a.value_, b.value_, &sum)) throw Error("cardinal overflow");
  return Cardinal(sum);
}

Cardinal operator*(Cardinal a, Cardinal b) {
  if (a.is_zero() || b.is_zero()) return Cardinal(0);
  if (a.infinite_ || b.infinite_) return Cardinal::aleph0();
  std::uint64_t prod = 0;
  if (__builtin_mul_overflow(a.value_, b.value_, &prod)) throw Error("cardinal overflow");
  return Cardinal(prod);
}

}  // namespace propcalc
