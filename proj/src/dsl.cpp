#include "propcalc/dsl.hpp"

#include <cctype>
#include <map>
#include <optional>

#include "propcalc/layer_split.hpp"
#include "propcalc/print.hpp"
#include "propcalc/torsion_calculus.hpp"

namespace propcalc::dsl {

namespace {

std::string render(Span at, const std::string& message, const std::vector<std::string>& expected) {
  std::string out = std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

enum class Tok { Ident, Int, LParen, RParen, LBracket, RBracket, Comma, Star, Caret, Equals, Semi, End };

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t value = 0;
  Span span;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident:
      return "'" + t.text + "'";
    case Tok::Int:
      return "integer " + t.text;
    case Tok::End:
      return "end of input";
    default:
      return "'" + t.text + "'";
  }
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  Span at;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++at.line;
        at.column = 1;
      } else {
        ++at.column;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const Span start = at;
    const auto uc = static_cast<unsigned char>(c);
    if (std::isdigit(uc)) {
      std::size_t j = i;
      std::uint64_t v = 0;
      bool overflow = false;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        const std::uint64_t d = static_cast<std::uint64_t>(src[j] - '0');
        if (v > (UINT64_MAX - d) / 10) overflow = true;
        else v = v * 10 + d;
        ++j;
      }
      if (overflow) throw DslError(start, "integer literal too large");
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), v, start});
      advance(j - i);
      continue;
    }
    if (std::isalpha(uc) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), 0, start});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      case '=': kind = Tok::Equals; break;
      case ';': kind = Tok::Semi; break;
      default: {
        std::string shown = std::isprint(uc) ? std::string(1, c) : "byte " + std::to_string(uc);
        throw DslError(start, "unexpected character " + shown);
      }
    }
    out.push_back({kind, std::string(1, c), 0, start});
    advance(1);
  }
  out.push_back({Tok::End, "", 0, at});
  return out;
}

bool reserved(const std::string& s) {
  static const char* const words[] = {"let", "for", "in", "repeat", "aleph0", "C",  "prod",
                                      "L",   "Zp",  "trivial", "seq", "N"};
  for (const char* w : words)
    if (s == w) return true;
  return false;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program prog;
    while (peek_ident("let")) {
      const Span at = next().span;
      const Token name = expect_ident("binding name");
      if (reserved(name.text)) throw DslError(name.span, "'" + name.text + "' is reserved");
      expect(Tok::Equals, "'='");
      prog.bindings.push_back({name.text, expr(), at});
      expect(Tok::Semi, "';'");
    }
    prog.result = expr();
    if (peek().kind == Tok::Semi) next();
    if (peek().kind != Tok::End)
      throw DslError(peek().span, "unexpected " + describe(peek()), {"'*'", "';'", "end of input"});
    return prog;
  }

 private:
  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser, Span at) : p(parser) {
      if (++p.depth_ > kMaxDepth) throw DslError(at, "nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
  };

  const Token& peek() const { return toks_[pos_]; }
  bool peek_ident(const char* word) const { return peek().kind == Tok::Ident && peek().text == word; }
  Token next() {
    Token t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) throw DslError(peek().span, "unexpected " + describe(peek()), {what});
    return next();
  }
  Token expect_ident(const std::string& what) { return expect(Tok::Ident, what); }
  void expect_word(const char* word) {
    if (!peek_ident(word))
      throw DslError(peek().span, "unexpected " + describe(peek()), {std::string("'") + word + "'"});
    next();
  }
  std::uint64_t integer(const std::string& what) { return expect(Tok::Int, what).value; }

  Cardinal count() {
    if (peek_ident("aleph0")) {
      next();
      return Cardinal::aleph0();
    }
    if (peek().kind == Tok::Int) return Cardinal(next().value);
    throw DslError(peek().span, "unexpected " + describe(peek()), {"integer", "'aleph0'"});
  }

  std::vector<Cardinal> card_list(std::size_t limit) {
    expect(Tok::LBracket, "'['");
    std::vector<Cardinal> out;
    if (peek().kind == Tok::RBracket) {
      next();
      return out;
    }
    for (;;) {
      out.push_back(count());
      if (out.size() > limit) throw DslError(peek().span, "list too long");
      if (peek().kind == Tok::Comma) {
        next();
        continue;
      }
      expect(Tok::RBracket, "']'");
      return out;
    }
  }

  ExprPtr make(Span at, auto node) { return std::make_shared<const Expr>(Expr{std::move(node), at}); }

  ExprPtr expr() {
    DepthGuard guard(*this, peek().span);
    const Span at = peek().span;
    std::vector<ExprPtr> factors{term()};
    while (peek().kind == Tok::Star) {
      next();
      factors.push_back(term());
    }
    if (factors.size() == 1) return factors.front();
    return make(at, ProductExpr{std::move(factors)});
  }

  ExprPtr term() {
    const Span at = peek().span;
    ExprPtr base = atom();
    if (peek().kind != Tok::Caret) return base;
    next();
    return make(at, ScaledLayer{std::move(base), count()});
  }

  ExprPtr atom() {
    DepthGuard guard(*this, peek().span);
    const Token t = peek();
    if (t.kind == Tok::LParen) {
      next();
      ExprPtr inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind != Tok::Ident)
      throw DslError(t.span, "unexpected " + describe(t),
                     {"'C'", "'prod'", "'L'", "'Zp'", "'trivial'", "'seq'", "name", "'('"});
    next();
    if (t.text == "C") {
      expect(Tok::LParen, "'('");
      const auto p = integer("prime");
      expect(Tok::Comma, "','");
      const auto e = integer("exponent");
      expect(Tok::RParen, "')'");
      return make(t.span, CyclicLayer{p, e});
    }
    if (t.text == "prod") {
      expect(Tok::LParen, "'('");
      expect_word("C");
      expect(Tok::LParen, "'('");
      const auto p = integer("prime");
      expect(Tok::Comma, "','");
      const Token var = expect_ident("index variable");
      expect(Tok::RParen, "')'");
      expect_word("for");
      const Token var2 = expect_ident("index variable");
      if (var2.text != var.text)
        throw DslError(var2.span, "index variable '" + var2.text + "' does not match '" + var.text + "'");
      expect_word("in");
      expect_word("N");
      expect(Tok::RParen, "')'");
      return make(t.span, ProdAllCyclic{p});
    }
    if (t.text == "L") {
      expect(Tok::LParen, "'('");
      const auto p = integer("prime");
      expect(Tok::Comma, "','");
      LayerLiteral lit{p, card_list(kMaxExponent), {}};
      if (peek().kind == Tok::Comma) {
        next();
        lit.pattern = card_list(kMaxPeriod);
      }
      expect(Tok::RParen, "')'");
      return make(t.span, std::move(lit));
    }
    if (t.text == "Zp" || t.text == "trivial") {
      expect(Tok::LParen, "'('");
      const auto p = integer("prime");
      expect(Tok::RParen, "')'");
      if (t.text == "Zp") return make(t.span, FreePart{p});
      return make(t.span, TrivialGroup{p});
    }
    if (t.text == "seq") {
      expect(Tok::LBracket, "'['");
      SeqLiteral lit;
      if (peek().kind == Tok::RBracket) {
        next();
        return make(t.span, std::move(lit));
      }
      for (;;) {
        if (peek_ident("repeat")) {
          next();
          expect(Tok::LParen, "'('");
          lit.items.push_back({expr(), true});
          expect(Tok::RParen, "')'");
        } else {
          lit.items.push_back({expr(), false});
        }
        if (peek().kind == Tok::Comma) {
          next();
          continue;
        }
        expect(Tok::RBracket, "']'");
        return make(t.span, std::move(lit));
      }
    }
    if (reserved(t.text)) throw DslError(t.span, "unexpected keyword '" + t.text + "'");
    return make(t.span, NameRef{t.text});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

class Lowerer {
 public:
  ProPDescriptor run(const Program& prog) {
    for (const auto& b : prog.bindings) {
      if (env_.count(b.name)) throw DslError(b.span, "'" + b.name + "' is already defined");
      env_.emplace(b.name, eval(*b.value));
    }
    return eval(*prog.result);
  }

 private:
  static std::uint64_t checked_prime(std::uint64_t p, Span at) {
    if (p > kMaxPrime) throw DslError(at, "prime " + std::to_string(p) + " is too large");
    if (!is_prime(p)) throw DslError(at, std::to_string(p) + " is not prime");
    return p;
  }

  ProPDescriptor eval(const Expr& e) {
    try {
      return std::visit([&](const auto& n) { return eval_node(n, e.span); }, e.node);
    } catch (const DslError&) {
      throw;
    } catch (const std::exception& ex) {
      throw DslError(e.span, ex.what());
    }
  }

  ProPDescriptor eval_node(const CyclicLayer& n, Span at) {
    const auto p = checked_prime(n.prime, at);
    if (n.exponent == 0 || n.exponent > kMaxExponent)
      throw DslError(at, "exponent must lie in 1.." + std::to_string(kMaxExponent));
    return ProPDescriptor::cartesian({p, MultiplicitySeq::cyclic(n.exponent)});
  }
  ProPDescriptor eval_node(const ProdAllCyclic& n, Span at) {
    return ProPDescriptor::cartesian({checked_prime(n.prime, at), MultiplicitySeq::all_ones()});
  }
  ProPDescriptor eval_node(const LayerLiteral& n, Span at) {
    const auto p = checked_prime(n.prime, at);
    const auto m = n.pattern.empty() ? MultiplicitySeq::finite(n.prefix)
                                     : MultiplicitySeq::periodic(n.prefix, n.pattern);
    return ProPDescriptor::cartesian({p, m});
  }
  ProPDescriptor eval_node(const FreePart& n, Span at) {
    return ProPDescriptor::free(checked_prime(n.prime, at), Cardinal(1));
  }
  ProPDescriptor eval_node(const TrivialGroup& n, Span at) {
    return ProPDescriptor::trivial(checked_prime(n.prime, at));
  }
  ProPDescriptor eval_node(const NameRef& n, Span at) {
    const auto it = env_.find(n.name);
    if (it == env_.end()) throw DslError(at, "undefined name '" + n.name + "'");
    return it->second;
  }
  ProPDescriptor eval_node(const ProductExpr& n, Span) {
    ProPDescriptor acc = eval(*n.factors.front());
    for (std::size_t i = 1; i < n.factors.size(); ++i) {
      const auto rhs = eval(*n.factors[i]);
      if (rhs.prime != acc.prime)
        throw DslError(n.factors[i]->span, "mixed primes " + std::to_string(acc.prime) + " and " +
                                               std::to_string(rhs.prime));
      acc = product(acc, rhs);
    }
    return acc;
  }
  ProPDescriptor eval_node(const ScaledLayer& n, Span at) {
    if (n.count.is_zero()) throw DslError(at, "power must be positive");
    const auto base = eval(*n.base);
    const auto seq = map_entries(base.torsion, [&](const CartesianDescriptor& layer) {
      return CartesianDescriptor{layer.prime, layer.mults.scaled(n.count)};
    });
    return ProPDescriptor{base.prime, seq, base.free_rank * n.count}.normalized();
  }
  ProPDescriptor eval_node(const SeqLiteral& n, Span at) {
    if (n.items.empty()) throw DslError(at, "empty sequence; write trivial(p) for the trivial group");
    std::vector<Segment> segs;
    std::vector<CartesianDescriptor> pending;
    std::optional<std::uint64_t> prime;
    for (const auto& item : n.items) {
      const auto d = eval(*item.layer);
      if (prime && *prime != d.prime)
        throw DslError(item.layer->span, "mixed primes " + std::to_string(*prime) + " and " +
                                             std::to_string(d.prime));
      prime = d.prime;
      if (!d.free_rank.is_zero() || d.torsion.order_type() > Ordinal::finite(1))
        throw DslError(item.layer->span, "sequence items must be single Cartesian layers");
      const auto layer = d.torsion.empty() ? CartesianDescriptor::trivial(d.prime) : d.torsion.at(Ordinal());
      if (item.repeat) {
        segs.emplace_back(OmegaRun{std::move(pending), layer});
        pending.clear();
      } else {
        pending.push_back(layer);
      }
    }
    if (!pending.empty()) segs.emplace_back(FiniteRun{std::move(pending)});
    const TorsionSequence seq(std::move(segs));
    const auto report = validate(seq);
    if (!report.valid()) throw DslError(at, "invalid sequence: " + report.to_string()).with_report(report);
    return ProPDescriptor{*prime, seq, Cardinal(0)}.normalized();
  }

  std::map<std::string, ProPDescriptor> env_;
};

}  // namespace

DslError::DslError(Span at, std::string message, std::vector<std::string> expected)
    : Error(render(at, message, expected)),
      span_(at),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

Program parse(std::string_view text) {
  try {
    return Parser(lex(text)).program();
  } catch (const DslError&) {
    throw;
  } catch (const std::exception& ex) {
    throw DslError({}, ex.what());
  }
}

ProPDescriptor lower(const Program& program) {
  try {
    return Lowerer().run(program);
  } catch (const DslError&) {
    throw;
  } catch (const std::exception& ex) {
    throw DslError({}, ex.what());
  }
}

ProPDescriptor parse_descriptor(std::string_view text) { return lower(parse(text)); }

std::string print(const ProPDescriptor& d) { return format_descriptor(d.normalized()); }

}  // namespace propcalc::dsl
