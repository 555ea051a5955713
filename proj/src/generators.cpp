#include "propcalc/generators.hpp"

namespace propcalc::gen {

namespace {

std::uint64_t pick(Rng& rng, std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); }

void partitions(unsigned remaining, unsigned largest, std::vector<unsigned>& cur,
                std::vector<std::vector<unsigned>>& out) {
  out.push_back(cur);
  for (unsigned e = std::min(remaining, largest); e >= 1; --e) {
    cur.push_back(e);
    partitions(remaining - e, e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

CartesianDescriptor unbounded_layer(Rng& rng, std::uint64_t p) {
  const Cardinal w = Cardinal::aleph0();
  switch (pick(rng, 7)) {
    case 0:
      return {p, MultiplicitySeq::all_ones()};
    case 1:
      return {p, MultiplicitySeq::all_aleph0()};
    case 2:
      return {p, MultiplicitySeq::periodic({}, {1, 0})};
    case 3:
      return {p, MultiplicitySeq::periodic({2}, {0, 1})};
    case 4:
      return {p, MultiplicitySeq::periodic({0, w}, {1, 2, 0})};
    case 5:
      return {p, MultiplicitySeq::periodic({1}, {2})};
    default:
      return {p, MultiplicitySeq::periodic({}, {0, 0, 1})};
  }
}

CartesianDescriptor bounded_layer(Rng& rng, std::uint64_t p) {
  switch (pick(rng, 5)) {
    case 0:
      return {p, MultiplicitySeq::cyclic(1 + pick(rng, 3))};
    case 1:
      return {p, MultiplicitySeq::finite({1, 0, 2})};
    case 2:
      return {p, MultiplicitySeq::cyclic(1, Cardinal::aleph0())};
    case 3:
      return {p, MultiplicitySeq::finite({0, 1, Cardinal::aleph0()})};
    default:
      return {p, MultiplicitySeq::finite({2, 1})};
  }
}

TorsionSequence sequence_of_type(Rng& rng, std::uint64_t p, std::uint64_t k, std::uint64_t n,
                                 bool unbounded_final) {
  std::vector<Segment> segs;
  for (std::uint64_t b = 0; b < k; ++b) {
    OmegaRun run;
    const std::uint64_t prefix = pick(rng, 3);
    for (std::uint64_t j = 0; j < prefix; ++j) run.prefix.push_back(unbounded_layer(rng, p));
    run.repeat = unbounded_layer(rng, p);
    segs.emplace_back(std::move(run));
  }
  if (n > 0) {
    FiniteRun run;
    for (std::uint64_t j = 0; j + 1 < n; ++j) run.entries.push_back(unbounded_layer(rng, p));
    run.entries.push_back(unbounded_final ? unbounded_layer(rng, p) : bounded_layer(rng, p));
    segs.emplace_back(std::move(run));
  }
  return TorsionSequence(std::move(segs)).normalized();
}

ProPDescriptor descriptor(Rng& rng, const DescriptorOptions& opts) {
  const std::uint64_t p = pick(rng, 4) == 0 ? 3 : 2;
  const std::uint64_t k = pick(rng, opts.max_limit_blocks + 1);
  std::uint64_t n = pick(rng, opts.max_finite_tail + 1);
  if (k == 0 && n == 0 && pick(rng, 3) != 0) n = 1;
  const bool unbounded_final = pick(rng, 2) == 0;
  Cardinal free;
  switch (pick(rng, 6)) {
    case 0:
    case 1:
    case 2:
      free = 0;
      break;
    case 3:
      free = 1;
      break;
    case 4:
      free = 2;
      break;
    default:
      free = opts.allow_aleph0_free_rank ? Cardinal::aleph0() : Cardinal(3);
  }
  return ProPDescriptor{p, sequence_of_type(rng, p, k, n, unbounded_final), free}.normalized();
}

std::vector<FiniteAbelianPGroup> groups_up_to(std::uint64_t p, unsigned max_log) {
  std::vector<std::vector<unsigned>> parts;
  std::vector<unsigned> cur;
  partitions(max_log, max_log, cur, parts);
  std::vector<FiniteAbelianPGroup> out;
  for (auto& e : parts) out.emplace_back(p, e);
  return out;
}

}  // namespace propcalc::gen
