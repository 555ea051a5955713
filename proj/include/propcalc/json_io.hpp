#pragma once

#include <json.hpp>

#include "propcalc/classifier.hpp"
#include "propcalc/constructor.hpp"
#include "propcalc/descriptor.hpp"
#include "propcalc/finite_group.hpp"

namespace propcalc {

using Json = nlohmann::ordered_json;

Json to_json(const Cardinal& c);
Json to_json(const MultiplicitySeq& m);
Json to_json(const CartesianDescriptor& layer);
Json to_json(const TorsionSequence& seq);
Json to_json(const ProPDescriptor& d);
Json to_json(const DiscreteDescriptor& e);
Json to_json(const ValidityReport& r);
Json to_json(const IsoCertificate& c);
Json to_json(const EmbeddingResult& e);
Json to_json(const FiniteAbelianPGroup& g);
Json to_json(const PresentationTree& t);

Cardinal cardinal_from_json(const Json& j);
MultiplicitySeq mults_from_json(const Json& j);
CartesianDescriptor layer_from_json(const Json& j);
TorsionSequence sequence_from_json(const Json& j);
ProPDescriptor descriptor_from_json(const Json& j);
TreePtr tree_from_json(const Json& j);

}  // namespace propcalc
