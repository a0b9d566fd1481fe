#ifndef EETNET_IO_HPP
#define EETNET_IO_HPP

#include <iosfwd>
#include <span>
#include <string>

#include "eetnet/asymptotics.hpp"
#include "eetnet/ensemble.hpp"
#include "eetnet/mfpt.hpp"
#include "eetnet/subspace.hpp"

namespace eetnet {

/// Full-precision scientific formatting (round-trips exactly).
std::string format_full(double x);

inline constexpr const char* kSweepCsvHeader =
    "gamma,mfpt,q_exact,q_approx,divergent_flag";
inline constexpr const char* kDisorderCsvHeader =
    "gamma,sigma,n_samples,mean_t,stderr_t,mean_q,stderr_q,divergent_count";

void write_sweep_csv_header(std::ostream& os);
void write_sweep_csv_row(std::ostream& os, const TransferResult& row);
void write_sweep_csv(std::ostream& os, std::span<const TransferResult> rows);

void write_disorder_csv_header(std::ostream& os);
void write_disorder_csv_row(std::ostream& os, const EnsembleResult& row);
void write_disorder_csv(std::ostream& os, std::span<const EnsembleResult> rows);

std::string subspace_report_json(const SubspaceReport& report,
                                 const Projection* projection = nullptr);
std::string asymptote_report_json(const AsymptoteReport& report);
std::string scaling_fit_json(const ScalingFit& fit);

} // namespace eetnet

#endif
