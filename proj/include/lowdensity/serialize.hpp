#pragma once

// JSON records for reports and traces. Field names follow the struct members.
// Complex values are {"re": .., "im": ..}; infinite thresholds (orthonormal
// dictionaries) are written as null.

#include <json.hpp>

#include "lowdensity/certificates.hpp"
#include "lowdensity/coherence.hpp"
#include "lowdensity/density.hpp"
#include "lowdensity/omp.hpp"
#include "lowdensity/oracle.hpp"

namespace lowdensity {

using Json = nlohmann::ordered_json;

Json to_json(const Complex& c);
Json to_json(const Vector& v);
Json to_json(const DensityReport& r);
Json to_json(const CoherenceReport& r);
Json to_json(const MutualCoherenceReport& r);
Json to_json(const KernelCertificate& c);
Json to_json(const UncertaintyReport& r);
Json to_json(const GuaranteeReport& r);
Json to_json(const OmpTrace& t);
Json to_json(const KernelProbeResult& r);

}  // namespace lowdensity
