#pragma once

#include "pbo/evaluation.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pbo {

/// Header: problem,variant,trial,seed,N,f_best,accuracy
void write_trace_csv(std::ostream& os, const std::vector<RunRecord>& records, double f_star);

/// "n.r." for not-reached, otherwise the value with up to one decimal.
std::string format_n_acc(const std::optional<double>& v);

/// JSON array of summaries; not-reached medians become null.
std::string summaries_json(const std::vector<ProblemSummary>& summaries, double t = kDefaultAccuracyThreshold);

/// Median, best and worst f(x_best(N)) per variant.
std::string convergence_svg(const std::string& title, const std::map<std::string, std::vector<RunRecord>>& runs,
                            double f_star);

/// Solved fraction versus N per variant.
std::string data_profile_svg(const std::string& title, const std::map<std::string, DataProfile>& profiles);

}  // namespace pbo
