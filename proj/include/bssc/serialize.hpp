#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bssc/bounds.hpp"
#include "bssc/conjecture.hpp"
#include "bssc/info.hpp"
#include "bssc/prob.hpp"
#include "bssc/reduction.hpp"

namespace bssc {

// Distributions serialize as {"shape":[m,n,...],"p":[row-major floats]};
// channels as {"rows":[[...],[...]]}.
nlohmann::json to_json(const ProbVec& d);
nlohmann::json to_json(const JointDist& j);
nlohmann::json to_json(const Channel& ch);
ProbVec probvec_from_json(const nlohmann::json& js);
JointDist jointdist_from_json(const nlohmann::json& js);
Channel channel_from_json(const nlohmann::json& js);

// {"function":"0110","class":"xor","step":s,"points":n,"max_gap":g,
//  "argmax":[p00,p01,p10,p11],"violated":false}
nlohmann::json to_json(const ViolationReport& r);

nlohmann::json to_json(const SumRateReport& r);
nlohmann::json to_json(const CapacityResult& r);
nlohmann::json to_json(const MaximizeResult& r);
nlohmann::json to_json(const FunctionalizationResult& r);

// [{"axis":"u","L":[...],"eps":e,"obj_before":a,"obj_after":b}, ...]
nlohmann::json certificate_to_json(const std::vector<ReductionStep>& steps);
nlohmann::json to_json(const ReductionResult& r);

std::string envelope_csv(const EnvelopeResult& env, std::size_t samples);
std::string diffcurve_csv(std::size_t samples);
std::string rate_points_csv(const std::string& bound_id,
                            const std::vector<std::pair<double, double>>& pts);

}  // namespace bssc
