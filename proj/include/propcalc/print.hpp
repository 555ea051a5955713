#pragma once

#include <string>

#include "propcalc/descriptor.hpp"

namespace propcalc {

// Canonical descriptor-language text.  Every string produced here parses
// back to the value it was printed from.

std::string format_cardinal(const Cardinal& c);
std::string format_layer(const CartesianDescriptor& layer);
/// "seq[A, repeat(B), C]" or "seq[]".
std::string format_sequence(const TorsionSequence& seq);
std::string format_descriptor(const ProPDescriptor& d);
std::string format_discrete(const DiscreteDescriptor& e);

}  // namespace propcalc
