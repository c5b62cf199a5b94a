// ssd_cli: construct codes, encode, decode single blocks and run BLER sweeps.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssd/channel.hpp"
#include "ssd/codes.hpp"
#include "ssd/decoder.hpp"
#include "ssd/metrics.hpp"
#include "ssd/sim.hpp"

using namespace ssd;
namespace fs = std::filesystem;

namespace {

struct CodeArgs
{
	std::string family = "polar";
	int n = 6;
	int K = 57;
};

void add_code_options(CLI::App &cmd, CodeArgs &code)
{
	cmd.add_option("--family", code.family, "polar or rm")->check(CLI::IsMember({"polar", "rm"}))->capture_default_str();
	cmd.add_option("--n", code.n, "log2 of the code length")->check(CLI::Range(0, kMaxLog2Length))->capture_default_str();
	cmd.add_option("--k", code.K, "code dimension")->capture_default_str();
}

fs::path resolve_output(const std::string &out)
{
	fs::path p(out);
	if (p.is_relative())
		if (const char *dir = std::getenv("SSD_OUTPUT_DIR"); dir && *dir)
			p = fs::path(dir) / p;
	return p;
}

std::string bit_string(const Bits &bits)
{
	std::string s;
	for (auto b : bits)
		s.push_back(b ? '1' : '0');
	return s;
}

Bits parse_bits(const std::string &text, int length)
{
	if (text.size() == size_t(length) && text.find_first_not_of("01") == std::string::npos) {
		Bits bits;
		for (char c : text)
			bits.push_back(uint8_t(c - '0'));
		return bits;
	}
	return bits_from_hex(text, length);
}

std::vector<double> read_reals(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open received vector file '" + path + "'");
	std::vector<double> values;
	std::string token;
	while (in >> token) {
		for (auto &c : token)
			if (c == ',')
				c = ' ';
		std::istringstream parts(token);
		double v;
		while (parts >> v)
			values.push_back(v);
		if (!parts.eof())
			throw std::runtime_error("non-numeric entry '" + token + "' in '" + path + "'");
	}
	return values;
}

std::vector<MetricKind> parse_kinds(const std::vector<std::string> &names)
{
	std::vector<MetricKind> kinds;
	for (const auto &name : names)
		kinds.push_back(metric_kind_from_string(name));
	return kinds;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Stack sphere decoding of polar and Reed-Muller codes"};
	app.require_subcommand(1);

	CodeArgs code;
	auto *construct = app.add_subcommand("construct", "print the code specification as JSON");
	add_code_options(*construct, code);

	std::string input;
	auto *encode_cmd = app.add_subcommand("encode", "encode a source block u; prints x, then v");
	add_code_options(*encode_cmd, code);
	encode_cmd->add_option("--input", input, "u as N characters of 0/1, or hex (position 1 = MSB)")->required();

	std::string received_path, metric_name = "m1", trace_path;
	double ebn0 = 4.0;
	double n0 = 0;
	auto *decode_cmd = app.add_subcommand("decode", "decode one received block");
	add_code_options(*decode_cmd, code);
	decode_cmd->add_option("--input", received_path, "file of N real values (whitespace or comma separated)")
	    ->required()
	    ->check(CLI::ExistingFile);
	decode_cmd->add_option("--metric", metric_name, "m0, m1, m2 or m3")->capture_default_str();
	auto *ebn0_opt = decode_cmd->add_option("--ebn0", ebn0, "Eb/N0 in dB")->capture_default_str();
	decode_cmd->add_option("--n0", n0, "noise density N0 (E = 1); overrides --ebn0")->excludes(ebn0_opt);
	decode_cmd->add_option("--trace", trace_path, "write the search trace here ('-' for stderr)");

	SweepConfig sweep;
	std::vector<double> sweep_points;
	std::vector<std::string> sweep_metrics;
	std::string config_path, out_path, format;
	bool no_timing = false;
	uint64_t trials = 0, seed = 0, min_errors = 0;
	auto *sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo BLER and complexity sweep");
	add_code_options(*sweep_cmd, code);
	sweep_cmd->add_option("--config", config_path, "JSON sweep configuration; flags override it")->check(CLI::ExistingFile);
	auto *points_opt = sweep_cmd->add_option("--ebn0", sweep_points, "Eb/N0 points in dB, comma separated")->delimiter(',');
	auto *metrics_opt = sweep_cmd->add_option("--metric", sweep_metrics, "metrics, comma separated (default m0,m1,m2)")->delimiter(',');
	auto *trials_opt = sweep_cmd->add_option("--trials", trials, "trials per point (default 1000)");
	auto *seed_opt = sweep_cmd->add_option("--seed", seed, "master seed (default 1)");
	auto *min_errors_opt = sweep_cmd->add_option("--min-errors", min_errors, "stop a point after this many block errors, 0 = never (default 100)");
	sweep_cmd->add_option("--out", out_path, "output file; relative paths resolve against SSD_OUTPUT_DIR (default: csv to stdout)");
	auto *format_opt = sweep_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
	sweep_cmd->add_flag("--no-timing", no_timing, "write wall_time_s as 0 for byte-reproducible output");
	sweep_cmd->add_option("--trace", trace_path, "stream decoder traces here (serial run, '-' for stderr)");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		app.exit(e);
		return 2;
	}

	auto open_trace = [&](std::ofstream &file) -> std::ostream * {
		if (trace_path.empty())
			return nullptr;
		if (trace_path == "-")
			return &std::cerr;
		file.open(resolve_output(trace_path));
		if (!file)
			throw std::runtime_error("cannot open trace file '" + trace_path + "'");
		return &file;
	};

	try {
		if (*construct) {
			std::cout << to_json(construct_code(code.family, code.n, code.K)).dump(2) << '\n';
		} else if (*encode_cmd) {
			const auto spec = construct_code(code.family, code.n, code.K);
			const auto enc = encode(parse_bits(input, spec.N), spec);
			std::cout << bit_string(enc.x) << '\n' << bit_string(enc.v) << '\n';
		} else if (*decode_cmd) {
			const auto spec = construct_code(code.family, code.n, code.K);
			const auto y = read_reals(received_path);
			const ChannelParams params = n0 > 0 ? ChannelParams{1.0, n0} : ebn0_to_params(ebn0, spec.N, spec.K);
			std::ofstream trace_file;
			DecoderOptions options;
			options.trace = open_trace(trace_file);
			const auto r = ssd_decode(y, spec, params, metric_kind_from_string(metric_name), options);
			nlohmann::json doc{{"u_hat", bit_string(r.u_hat)},
			                   {"v_hat", bit_string(r.v_hat)},
			                   {"sed", r.final_radius_sq},
			                   {"node_visits", r.stats.node_visits},
			                   {"pops", r.stats.pops},
			                   {"max_stack", r.stats.max_stack},
			                   {"radius_updates", r.stats.radius_updates}};
			std::cout << doc.dump(2) << '\n';
		} else if (*sweep_cmd) {
			if (!config_path.empty()) {
				std::ifstream in(config_path);
				sweep = sweep_config_from_json(nlohmann::json::parse(in));
			}
			if (config_path.empty() || sweep_cmd->count("--family"))
				sweep.family = code.family;
			if (config_path.empty() || sweep_cmd->count("--n"))
				sweep.n = code.n;
			if (config_path.empty() || sweep_cmd->count("--k"))
				sweep.K = code.K;
			if (points_opt->count())
				sweep.ebn0_db = sweep_points;
			if (metrics_opt->count())
				sweep.kinds = parse_kinds(sweep_metrics);
			if (trials_opt->count())
				sweep.trials_per_point = trials;
			if (seed_opt->count())
				sweep.master_seed = seed;
			if (min_errors_opt->count())
				sweep.min_block_errors = min_errors;
			if (format_opt->count())
				sweep.format = format;
			if (!out_path.empty())
				sweep.output_path = out_path;
			if (no_timing)
				sweep.record_timing = false;
			sweep.validate();

			std::ofstream trace_file;
			std::ostream *trace = open_trace(trace_file);
			const auto records = trace ? run_sweep_serial(sweep, trace) : run_sweep(sweep);
			if (sweep.output_path.empty()) {
				if (sweep.format == "json")
					std::cout << records_to_json(records, sweep_metadata(sweep)).dump(2) << '\n';
				else
					std::cout << records_to_csv(records);
			} else {
				const auto path = resolve_output(sweep.output_path);
				write_records(records, path, sweep.format, sweep_metadata(sweep));
				std::cerr << "wrote " << records.size() << " records to " << path.string() << '\n';
			}
		}
	} catch (const std::invalid_argument &e) {
		std::cerr << "error: " << e.what() << '\n';
		return 2;
	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	}
	return 0;
}
