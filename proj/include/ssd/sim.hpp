/*
Monte-Carlo BLER and complexity sweeps

Every trial draws its information block and noise from a seed derived from
(master_seed, Eb/N0 index, trial index), and every metric decodes that same
received vector. Comparisons between metrics are therefore paired.

run_sweep() spreads trials over OpenMP threads; run_sweep_serial() is the
plain loop kept as the reference. Both aggregate in trial order and return
identical records apart from wall_time_s.
*/

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssd/codes.hpp"
#include "ssd/metrics.hpp"

namespace ssd {

inline constexpr const char *kNodeVisitDefinition =
    "one visit per child path generated during expansion (frozen levels generate one child, others two)";
inline constexpr const char *kEnergyConvention = "E = 1, Eb = E * N / K, N0 = Eb / 10^(EbN0_dB / 10)";

struct SweepConfig
{
	std::string family = "polar";
	int n = 6;
	int K = 57;
	std::vector<double> ebn0_db;
	std::vector<MetricKind> kinds{MetricKind::M0, MetricKind::M1, MetricKind::M2};
	uint64_t trials_per_point = 1000;
	uint64_t master_seed = 1;
	/// Stop a point once this many block errors accumulate; 0 disables.
	uint64_t min_block_errors = 100;
	/// When false, wall_time_s is written as 0 so outputs are byte-reproducible.
	bool record_timing = true;
	std::string output_path;
	std::string format = "csv";

	/// Throws std::invalid_argument.
	void validate() const;
};

struct SweepRecord
{
	double ebn0_db = 0;
	MetricKind kind = MetricKind::M0;
	uint64_t trials = 0;
	uint64_t block_errors = 0;
	double bler = 0;
	double avg_node_visits = 0;
	double avg_pops = 0;
	double avg_max_stack = 0;
	double wall_time_s = 0;

	friend bool operator==(const SweepRecord &, const SweepRecord &) = default;
};

struct TrialOutcome
{
	bool block_error = false;
	uint64_t node_visits = 0;
	uint64_t pops = 0;
	uint64_t max_stack = 0;
	double seconds = 0;
};

/// Decodes trial `trial` of Eb/N0 point `point` with every kind in `kinds`.
/// `trace`, when given, receives the decoder trace of each decode.
std::vector<TrialOutcome> run_trial(const SweepConfig &config, const CodeSpec &spec, size_t point, uint64_t trial,
                                    std::ostream *trace = nullptr);

std::vector<SweepRecord> run_sweep(const SweepConfig &config);
std::vector<SweepRecord> run_sweep_serial(const SweepConfig &config, std::ostream *trace = nullptr);

inline constexpr const char *kCsvHeader =
    "ebn0_db,metric,trials,block_errors,bler,avg_node_visits,avg_pops,avg_max_stack,wall_time_s";

nlohmann::json sweep_metadata(const SweepConfig &config);
nlohmann::json to_json(const SweepConfig &config);
SweepConfig sweep_config_from_json(const nlohmann::json &doc);

std::string records_to_csv(const std::vector<SweepRecord> &records);
std::vector<SweepRecord> records_from_csv(const std::string &text);
nlohmann::json records_to_json(const std::vector<SweepRecord> &records, const nlohmann::json &metadata);
std::vector<SweepRecord> records_from_json(const nlohmann::json &doc);

/// Writes `records` as csv (plus a "<path>.meta.json" sidecar) or json.
/// Throws std::runtime_error naming the path on I/O failure.
void write_records(const std::vector<SweepRecord> &records, const std::filesystem::path &path, const std::string &format,
                   const nlohmann::json &metadata);
std::vector<SweepRecord> read_records(const std::filesystem::path &path, const std::string &format);

} // namespace ssd
