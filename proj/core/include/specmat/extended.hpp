#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace specmat {

/// A cardinal in {0, 1, 2, ...} ∪ {∞}. Addition absorbs into ∞; the strict
/// order never puts ∞ below ∞.
class ExtendedCount {
 public:
  ExtendedCount() : inf_(false), v_(0) {}
  ExtendedCount(std::uint64_t v) : inf_(false), v_(v) {}  // NOLINT: implicit by design
  static ExtendedCount infinity() {
    ExtendedCount c;
    c.inf_ = true;
    return c;
  }

  bool is_infinite() const { return inf_; }
  bool is_finite() const { return !inf_; }
  std::uint64_t value() const {
    if (inf_) throw std::logic_error("ExtendedCount: value() of infinity");
    return v_;
  }

  friend ExtendedCount operator+(const ExtendedCount& a, const ExtendedCount& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtendedCount(a.v_ + b.v_);
  }
  ExtendedCount& operator+=(const ExtendedCount& o) { return *this = *this + o; }

  friend bool operator==(const ExtendedCount& a, const ExtendedCount& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator!=(const ExtendedCount& a, const ExtendedCount& b) { return !(a == b); }
  /// Strict order: n < ∞ for finite n; ∞ < ∞ is false.
  friend bool operator<(const ExtendedCount& a, const ExtendedCount& b) {
    if (b.inf_) return !a.inf_;
    if (a.inf_) return false;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtendedCount& a, const ExtendedCount& b) {
    return a == b || a < b;
  }

  std::string to_string() const { return inf_ ? "inf" : std::to_string(v_); }

 private:
  bool inf_;
  std::uint64_t v_;
};

/// A signed index value in {-∞} ∪ ℤ ∪ {+∞}.
struct ExtendedInt {
  enum class Tag { NegInf, Finite, PosInf };
  Tag tag = Tag::Finite;
  std::int64_t v = 0;

  static ExtendedInt finite(std::int64_t x) { return {Tag::Finite, x}; }
  static ExtendedInt pos_inf() { return {Tag::PosInf, 0}; }
  static ExtendedInt neg_inf() { return {Tag::NegInf, 0}; }

  friend bool operator==(const ExtendedInt& a, const ExtendedInt& b) {
    return a.tag == b.tag && (a.tag != Tag::Finite || a.v == b.v);
  }
  std::string to_string() const {
    switch (tag) {
      case Tag::NegInf: return "-inf";
      case Tag::PosInf: return "+inf";
      default: return std::to_string(v);
    }
  }
};

/// Fredholm index alpha - beta. Defined only when at least one side is finite.
inline std::optional<ExtendedInt> index_of(const ExtendedCount& alpha,
                                           const ExtendedCount& beta) {
  if (alpha.is_infinite() && beta.is_infinite()) return std::nullopt;
  if (alpha.is_infinite()) return ExtendedInt::pos_inf();
  if (beta.is_infinite()) return ExtendedInt::neg_inf();
  return ExtendedInt::finite(static_cast<std::int64_t>(alpha.value()) -
                             static_cast<std::int64_t>(beta.value()));
}

}  // namespace specmat
