#include "ssd/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ssd/channel.hpp"
#include "ssd/decoder.hpp"

namespace ssd {

void SweepConfig::validate() const
{
	if (family != "polar" && family != "rm")
		throw std::invalid_argument("unknown code family '" + family + "'");
	construct_code(family, n, K);
	if (ebn0_db.empty())
		throw std::invalid_argument("Eb/N0 list is empty");
	for (size_t i = 1; i < ebn0_db.size(); ++i)
		if (!(ebn0_db[i] > ebn0_db[i - 1]))
			throw std::invalid_argument("Eb/N0 list must be strictly increasing");
	if (kinds.empty())
		throw std::invalid_argument("metric list is empty");
	if (trials_per_point < 1)
		throw std::invalid_argument("trials per point must be at least 1");
	if (format != "csv" && format != "json")
		throw std::invalid_argument("unknown output format '" + format + "' (expected csv or json)");
}

namespace {

struct Accumulator
{
	uint64_t trials = 0;
	uint64_t errors = 0;
	uint64_t visits = 0;
	uint64_t pops = 0;
	uint64_t max_stack = 0;
	double seconds = 0;
	bool done = false;

	void add(const TrialOutcome &o, uint64_t min_errors)
	{
		++trials;
		errors += o.block_error;
		visits += o.node_visits;
		pops += o.pops;
		max_stack += o.max_stack;
		seconds += o.seconds;
		if (min_errors > 0 && errors >= min_errors)
			done = true;
	}
};

class PointAggregator
{
public:
	explicit PointAggregator(const SweepConfig &config) : config_(config), acc_(config.kinds.size()) {}

	bool finished() const
	{
		for (const auto &a : acc_)
			if (!a.done)
				return false;
		return true;
	}

	void add(const std::vector<TrialOutcome> &outcomes)
	{
		for (size_t k = 0; k < acc_.size(); ++k)
			if (!acc_[k].done)
				acc_[k].add(outcomes[k], config_.min_block_errors);
	}

	void emit(double ebn0, std::vector<SweepRecord> &out) const
	{
		for (size_t k = 0; k < acc_.size(); ++k) {
			const Accumulator &a = acc_[k];
			const double t = double(a.trials);
			out.push_back({ebn0, config_.kinds[k], a.trials, a.errors, double(a.errors) / t, double(a.visits) / t,
			               double(a.pops) / t, double(a.max_stack) / t, config_.record_timing ? a.seconds : 0.0});
		}
	}

private:
	const SweepConfig &config_;
	std::vector<Accumulator> acc_;
};

} // namespace

std::vector<TrialOutcome> run_trial(const SweepConfig &config, const CodeSpec &spec, size_t point, uint64_t trial, std::ostream *trace)
{
	const ChannelParams params = ebn0_to_params(config.ebn0_db[point], spec.N, spec.K);
	Rng rng(derive_seed(config.master_seed, point, trial));
	Bits info(size_t(spec.K));
	for (auto &b : info)
		b = uint8_t(rng() >> 63);
	const Bits u = source_from_info(info, spec);
	const Encoded enc = encode(u, spec);
	const auto y = transmit(bpsk_map(enc.x), params, rng);

	std::vector<TrialOutcome> out;
	out.reserve(config.kinds.size());
	for (MetricKind kind : config.kinds) {
		DecoderOptions options;
		if (trace) {
			*trace << "# ebn0_db=" << config.ebn0_db[point] << " trial=" << trial << " metric=" << to_string(kind) << '\n';
			options.trace = trace;
		}
		const auto start = std::chrono::steady_clock::now();
		const DecodeResult r = StackSphereDecoder(spec, kind, options).decode(y, params);
		const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
		out.push_back({r.u_hat != u, r.stats.node_visits, r.stats.pops, r.stats.max_stack, elapsed.count()});
	}
	return out;
}

std::vector<SweepRecord> run_sweep_serial(const SweepConfig &config, std::ostream *trace)
{
	config.validate();
	const CodeSpec spec = construct_code(config.family, config.n, config.K);
	std::vector<SweepRecord> records;
	for (size_t p = 0; p < config.ebn0_db.size(); ++p) {
		PointAggregator agg(config);
		for (uint64_t t = 0; t < config.trials_per_point && !agg.finished(); ++t)
			agg.add(run_trial(config, spec, p, t, trace));
		agg.emit(config.ebn0_db[p], records);
	}
	return records;
}

std::vector<SweepRecord> run_sweep(const SweepConfig &config)
{
	config.validate();
	const CodeSpec spec = construct_code(config.family, config.n, config.K);
	int threads = 1;
#ifdef _OPENMP
	threads = omp_get_max_threads();
#endif
	const uint64_t chunk = uint64_t(std::max(64, 16 * threads));
	std::vector<SweepRecord> records;
	std::vector<std::vector<TrialOutcome>> outcomes;
	for (size_t p = 0; p < config.ebn0_db.size(); ++p) {
		PointAggregator agg(config);
		for (uint64_t begin = 0; begin < config.trials_per_point && !agg.finished(); begin += chunk) {
			const uint64_t end = std::min(config.trials_per_point, begin + chunk);
			outcomes.assign(size_t(end - begin), {});
			const auto count = int64_t(end - begin);
#pragma omp parallel for schedule(dynamic, 1)
			for (int64_t i = 0; i < count; ++i)
				outcomes[size_t(i)] = run_trial(config, spec, p, begin + uint64_t(i));
			// trial order, so early stopping matches the serial loop exactly
			for (const auto &o : outcomes) {
				if (agg.finished())
					break;
				agg.add(o);
			}
		}
		agg.emit(config.ebn0_db[p], records);
	}
	return records;
}

nlohmann::json sweep_metadata(const SweepConfig &config)
{
	const CodeSpec spec = construct_code(config.family, config.n, config.K);
	nlohmann::json points = nlohmann::json::array();
	for (double ebn0 : config.ebn0_db) {
		const ChannelParams p = ebn0_to_params(ebn0, spec.N, spec.K);
		points.push_back({{"ebn0_db", ebn0}, {"E", p.E}, {"N0", p.N0}});
	}
	return {
		{"code", to_json(spec)},
		{"master_seed", config.master_seed},
		{"trials_per_point", config.trials_per_point},
		{"min_block_errors", config.min_block_errors},
		{"energy_convention", kEnergyConvention},
		{"node_visit_definition", kNodeVisitDefinition},
		{"channel", points},
	};
}

nlohmann::json to_json(const SweepConfig &config)
{
	std::vector<std::string> kinds;
	for (auto k : config.kinds)
		kinds.push_back(to_string(k));
	return {
		{"code", {{"family", config.family}, {"n", config.n}, {"K", config.K}}},
		{"ebn0_db", config.ebn0_db},
		{"metrics", kinds},
		{"trials_per_point", config.trials_per_point},
		{"master_seed", config.master_seed},
		{"min_block_errors", config.min_block_errors},
		{"record_timing", config.record_timing},
		{"output_path", config.output_path},
		{"format", config.format},
	};
}

SweepConfig sweep_config_from_json(const nlohmann::json &doc)
{
	SweepConfig c;
	try {
		const auto &code = doc.at("code");
		c.family = code.at("family").get<std::string>();
		c.n = code.at("n").get<int>();
		c.K = code.at("K").get<int>();
		c.ebn0_db = doc.at("ebn0_db").get<std::vector<double>>();
		if (doc.contains("metrics")) {
			c.kinds.clear();
			for (const auto &name : doc.at("metrics"))
				c.kinds.push_back(metric_kind_from_string(name.get<std::string>()));
		}
		c.trials_per_point = doc.value("trials_per_point", c.trials_per_point);
		c.master_seed = doc.value("master_seed", c.master_seed);
		c.min_block_errors = doc.value("min_block_errors", c.min_block_errors);
		c.record_timing = doc.value("record_timing", c.record_timing);
		c.output_path = doc.value("output_path", c.output_path);
		c.format = doc.value("format", c.format);
	} catch (const nlohmann::json::exception &e) {
		throw std::invalid_argument(std::string("malformed sweep config: ") + e.what());
	}
	c.validate();
	return c;
}

namespace {

std::string format_real(double v)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

double parse_real(const std::string &field)
{
	size_t used = 0;
	const double v = std::stod(field, &used);
	if (used != field.size())
		throw std::invalid_argument("bad number '" + field + "'");
	return v;
}

uint64_t parse_count(const std::string &field)
{
	size_t used = 0;
	const uint64_t v = std::stoull(field, &used);
	if (used != field.size())
		throw std::invalid_argument("bad count '" + field + "'");
	return v;
}

} // namespace

std::string records_to_csv(const std::vector<SweepRecord> &records)
{
	std::ostringstream out;
	out << kCsvHeader << '\n';
	for (const auto &r : records)
		out << format_real(r.ebn0_db) << ',' << to_string(r.kind) << ',' << r.trials << ',' << r.block_errors << ','
		    << format_real(r.bler) << ',' << format_real(r.avg_node_visits) << ',' << format_real(r.avg_pops) << ','
		    << format_real(r.avg_max_stack) << ',' << format_real(r.wall_time_s) << '\n';
	return out.str();
}

std::vector<SweepRecord> records_from_csv(const std::string &text)
{
	std::istringstream in(text);
	std::string line;
	if (!std::getline(in, line) || line != kCsvHeader)
		throw std::invalid_argument("CSV header does not match the sweep schema");
	std::vector<SweepRecord> records;
	while (std::getline(in, line)) {
		if (line.empty())
			continue;
		std::vector<std::string> f;
		std::istringstream fields(line);
		for (std::string cell; std::getline(fields, cell, ',');)
			f.push_back(cell);
		if (f.size() != 9)
			throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields, expected 9");
		records.push_back({parse_real(f[0]), metric_kind_from_string(f[1]), parse_count(f[2]), parse_count(f[3]),
		                   parse_real(f[4]), parse_real(f[5]), parse_real(f[6]), parse_real(f[7]), parse_real(f[8])});
	}
	return records;
}

nlohmann::json records_to_json(const std::vector<SweepRecord> &records, const nlohmann::json &metadata)
{
	nlohmann::json rows = nlohmann::json::array();
	for (const auto &r : records)
		rows.push_back({
			{"ebn0_db", r.ebn0_db},
			{"metric", to_string(r.kind)},
			{"trials", r.trials},
			{"block_errors", r.block_errors},
			{"bler", r.bler},
			{"avg_node_visits", r.avg_node_visits},
			{"avg_pops", r.avg_pops},
			{"avg_max_stack", r.avg_max_stack},
			{"wall_time_s", r.wall_time_s},
		});
	return {{"header", metadata}, {"records", rows}};
}

std::vector<SweepRecord> records_from_json(const nlohmann::json &doc)
{
	std::vector<SweepRecord> records;
	try {
		for (const auto &row : doc.at("records"))
			records.push_back({row.at("ebn0_db").get<double>(), metric_kind_from_string(row.at("metric").get<std::string>()),
			                   row.at("trials").get<uint64_t>(), row.at("block_errors").get<uint64_t>(),
			                   row.at("bler").get<double>(), row.at("avg_node_visits").get<double>(),
			                   row.at("avg_pops").get<double>(), row.at("avg_max_stack").get<double>(),
			                   row.at("wall_time_s").get<double>()});
	} catch (const nlohmann::json::exception &e) {
		throw std::invalid_argument(std::string("malformed records document: ") + e.what());
	}
	return records;
}

namespace {

void write_text(const std::filesystem::path &path, const std::string &text)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw std::runtime_error("cannot open '" + path.string() + "' for writing");
	out << text;
	if (!out.flush())
		throw std::runtime_error("failed writing '" + path.string() + "'");
}

} // namespace

void write_records(const std::vector<SweepRecord> &records, const std::filesystem::path &path, const std::string &format,
                   const nlohmann::json &metadata)
{
	if (records.empty())
		throw std::invalid_argument("no records to write");
	if (format == "csv") {
		write_text(path, records_to_csv(records));
		write_text(path.string() + ".meta.json", metadata.dump(2) + "\n");
	} else if (format == "json") {
		write_text(path, records_to_json(records, metadata).dump(2) + "\n");
	} else {
		throw std::invalid_argument("unknown output format '" + format + "'");
	}
}

std::vector<SweepRecord> read_records(const std::filesystem::path &path, const std::string &format)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw std::runtime_error("cannot open '" + path.string() + "' for reading");
	std::ostringstream text;
	text << in.rdbuf();
	if (format == "csv")
		return records_from_csv(text.str());
	if (format == "json")
		return records_from_json(nlohmann::json::parse(text.str()));
	throw std::invalid_argument("unknown output format '" + format + "'");
}

} // namespace ssd
