#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "swk/dynamics.hpp"
#include "swk/suite.hpp"

namespace swk {

using Json = nlohmann::ordered_json;

Json to_json(const PhaseState<double>& s);
Json to_json(const SWParams& p);
Json to_json(const AlgebraReport& r);
Json to_json(const InvolutionReport& r);
Json to_json(const IndependenceCertificate& c);
Json to_json(const LimitReport& r);
Json to_json(const VerifySuite& s);
Json to_json(const IntegratorConfig& c);
Json to_json(const DriftReport& r);
/// Status, counters and the last good state; no per-step data.
Json trajectory_summary(const Trajectory& t);
/// Full per-step data as arrays.
Json trajectory_json(const Trajectory& t);

/// Header: t, chart, q1..qN, p1..pN, H, I_0_1, ...; one row per logged state.
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

}  // namespace swk
