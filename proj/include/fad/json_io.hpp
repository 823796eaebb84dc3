#ifndef FAD_JSON_IO_HPP
#define FAD_JSON_IO_HPP

#include "fad/orbit.hpp"
#include "fad/systems.hpp"
#include "fad/zeta.hpp"

namespace fad {

// Pair of torus descriptors for the `equiv` verb.
struct TorusPairDesc {
    long p;
    IntMatrix m1, m2;
};

struct ParsedInput {
    bool is_pair = false;
    SystemDescriptor desc;
    TorusPairDesc pair;
};

// Descriptor schema: one object with a "kind" discriminator; arbitrary-size
// integers carried as decimal strings; rationals as "num/den".
ParsedInput parse_descriptor_text(const std::string& text);
// Canonical serialization (sorted keys, no whitespace); parse/serialize
// round-trips byte-identically.
std::string serialize_descriptor(const SystemDescriptor& desc);

std::string params_to_json(const FadParams& fp);
std::string detector_to_json(const DetectorDescriptor& d);

} // namespace fad

#endif
