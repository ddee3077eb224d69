#pragma once

#include <string>

#include "solarcast/baselines.hpp"
#include "solarcast/calibrate.hpp"
#include "solarcast/ngboost.hpp"

namespace solarcast {

/// Versioned JSON documents. Doubles are emitted in shortest round-trip form,
/// so serialize/parse/serialize is byte-stable and numerically exact.
inline constexpr int kDocumentVersion = 1;

std::string serialize_ngboost(const NGBoostModel& model);
NGBoostModel deserialize_ngboost(const std::string& doc);

std::string serialize_chp(const ChpModel& model);
ChpModel deserialize_chp(const std::string& doc);

std::string serialize_mcm(const McmModel& model);
McmModel deserialize_mcm(const std::string& doc);

std::string serialize_crude(const CrudeCalibrator& cal);
CrudeCalibrator deserialize_crude(const std::string& doc);

std::string serialize_kuleshov(const KuleshovCalibrator& cal);
KuleshovCalibrator deserialize_kuleshov(const std::string& doc);

std::string serialize_mle(const MleCalibrator& cal);
MleCalibrator deserialize_mle(const std::string& doc);

}  // namespace solarcast
