#include "propcalc/print.hpp"

namespace propcalc {

namespace {

std::string join_cards(const std::vector<Cardinal>& cs) {
  std::string out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ",";
    out += format_cardinal(cs[i]);
  }
  return out;
}

std::string prime_text(std::uint64_t p) { return std::to_string(p); }

}  // namespace

std::string format_cardinal(const Cardinal& c) { return c.to_string(); }

std::string format_layer(const CartesianDescriptor& layer) {
  const std::string p = prime_text(layer.prime);
  const auto m = normalize(layer.mults);
  if (m.is_trivial()) return "trivial(" + p + ")";
  if (m.prefix().empty() && m.tail() == TailKind::Periodic && m.pattern() == std::vector<Cardinal>{1})
    return "prod(C(" + p + ",i) for i in N)";
  if (m.prefix().empty() && m.tail() == TailKind::AllAleph0)
    return "prod(C(" + p + ",i) for i in N)^aleph0";
  if (m.tail() == TailKind::Zero) {
    std::string out;
    for (std::size_t i = 1; i <= m.prefix().size(); ++i) {
      const Cardinal c = m.at(i);
      if (c.is_zero()) continue;
      if (!out.empty()) out += " * ";
      out += "C(" + p + "," + std::to_string(i) + ")";
      if (c != Cardinal(1)) out += "^" + format_cardinal(c);
    }
    return out;
  }
  const std::vector<Cardinal> pattern =
      m.tail() == TailKind::AllAleph0 ? std::vector<Cardinal>{Cardinal::aleph0()} : m.pattern();
  return "L(" + p + ",[" + join_cards(m.prefix()) + "],[" + join_cards(pattern) + "])";
}

std::string format_sequence(const TorsionSequence& seq) {
  std::string out = "seq[";
  bool first = true;
  auto item = [&](const std::string& s) {
    if (!first) out += ", ";
    out += s;
    first = false;
  };
  for (const auto& b : seq.blocks()) {
    for (const auto& e : b.head) item(format_layer(e));
    if (b.repeat) item("repeat(" + format_layer(*b.repeat) + ")");
  }
  return out + "]";
}

std::string format_descriptor(const ProPDescriptor& d) {
  const std::string free = "Zp(" + prime_text(d.prime) + ")^" + format_cardinal(d.free_rank);
  if (d.torsion.empty()) return d.free_rank.is_zero() ? "trivial(" + prime_text(d.prime) + ")" : free;
  std::string out = format_sequence(d.torsion);
  if (!d.free_rank.is_zero()) out += " * " + free;
  return out;
}

std::string format_discrete(const DiscreteDescriptor& e) {
  return "discrete(" + prime_text(e.prime) + ", ulm=" + format_sequence(e.ulm) +
         ", divisible_rank=" + format_cardinal(e.divisible_rank) + ")";
}

}  // namespace propcalc
