#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "propcalc/descriptor.hpp"
#include "propcalc/error.hpp"

namespace propcalc::dsl {

struct Span {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Lexical, syntax and semantic errors, all positioned.
class DslError : public Error {
 public:
  DslError(Span at, std::string message, std::vector<std::string> expected = {});

  Span span() const { return span_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }
  /// Set when the error is a failed sequence validation.
  const std::optional<ValidityReport>& report() const { return report_; }
  DslError& with_report(ValidityReport r) {
    report_ = std::move(r);
    return *this;
  }

 private:
  Span span_;
  std::string message_;
  std::vector<std::string> expected_;
  std::optional<ValidityReport> report_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct CyclicLayer {
  std::uint64_t prime;
  std::uint64_t exponent;
};
/// prod(C(p,i) for i in N)
struct ProdAllCyclic {
  std::uint64_t prime;
};
/// L(p,[prefix],[pattern])
struct LayerLiteral {
  std::uint64_t prime;
  std::vector<Cardinal> prefix;
  std::vector<Cardinal> pattern;
};
struct FreePart {
  std::uint64_t prime;
};
struct TrivialGroup {
  std::uint64_t prime;
};
struct SeqItem {
  ExprPtr layer;
  bool repeat = false;
};
struct SeqLiteral {
  std::vector<SeqItem> items;
};
struct ScaledLayer {
  ExprPtr base;
  Cardinal count;
};
struct ProductExpr {
  std::vector<ExprPtr> factors;
};
struct NameRef {
  std::string name;
};

struct Expr {
  std::variant<CyclicLayer, ProdAllCyclic, LayerLiteral, FreePart, TrivialGroup, SeqLiteral,
               ScaledLayer, ProductExpr, NameRef>
      node;
  Span span;
};

struct Binding {
  std::string name;
  ExprPtr value;
  Span span;
};

/// program := { "let" NAME "=" expr ";" } expr [";"]
struct Program {
  std::vector<Binding> bindings;
  ExprPtr result;
};

inline constexpr std::size_t kMaxDepth = 200;
inline constexpr std::uint64_t kMaxExponent = 4096;
inline constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;

/// Never throws anything but DslError.
Program parse(std::string_view text);
/// Evaluates the program to a normalized descriptor.  Never throws anything
/// but DslError.
ProPDescriptor lower(const Program& program);
ProPDescriptor parse_descriptor(std::string_view text);
/// Canonical text; parse_descriptor(print(d)) == d.
std::string print(const ProPDescriptor& d);

}  // namespace propcalc::dsl
