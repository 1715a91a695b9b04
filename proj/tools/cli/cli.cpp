#include "cli/cli.hpp"

#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "v2v/errors.hpp"
#include "v2v/parallel.hpp"

namespace v2v::cli {
namespace {

void add_input_options(CLI::App& cmd, InputOptions& in) {
  cmd.add_option("--input", in.input, "Frame directory, raw frame file, or - for stdin")->required();
  cmd.add_option("--raw-width", in.raw_width, "Raw input frame width");
  cmd.add_option("--raw-height", in.raw_height, "Raw input frame height");
  cmd.add_option("--pattern", in.pattern, "Filename glob for image directories");
  cmd.add_option("--frame-rate", in.frame_rate, "Nominal frame rate recorded in the manifest");
  cmd.add_option("--scene-id", in.scene_id, "Scene id for raw input");
}

struct SimulateFlags {
  SimulateOptions options;
  std::string c_pos = "0.1:1.0";
  std::string c_neg = "0.1:1.0";
  std::string sigma_bg = "0:0.05";
  std::string hot_frac = "0:0.0005";
  std::string hot_mag = "0.1:1.0";
  std::string degrade_scale = "1:3";
  std::string policy = "random";
  std::string crop;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;

  SimulateOptions resolve() {
    auto& r = options.sample.policy.ranges;
    r.c_plus = parse_range(c_pos, "--c-pos");
    r.c_minus = parse_range(c_neg, "--c-neg");
    r.sigma_bg = parse_range(sigma_bg, "--sigma-bg");
    r.hot_pixel_fraction = parse_range(hot_frac, "--hot-frac");
    r.hot_pixel_magnitude = parse_range(hot_mag, "--hot-mag");
    options.sample.degrade.scale = parse_range(degrade_scale, "--degrade-scale");
    options.sample.policy.mode = parse_param_mode(policy);
    if (!crop.empty()) options.crop = parse_crop(crop, "--crop");
    options.seed = seed ? *seed : seed_from_env(0);
    options.workers = workers ? *workers : default_workers();
    return options;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Video-to-voxel event simulation toolkit"};
  app.name(args.empty() ? "v2v" : args.front());
  app.require_subcommand(1);
  std::function<int()> action;

  // simulate
  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Convert frame sequences into discrete voxel files");
  add_input_options(*simulate, sim.options.input);
  simulate->add_option("--output", sim.options.output, "Output directory")->required();
  simulate->add_option("--bins", sim.options.sample.plan.bins, "Bins per voxel (B)");
  simulate->add_option("--voxels", sim.options.sample.plan.voxels, "Voxels per training sequence (V)");
  simulate->add_option("--epochs", sim.options.epochs, "Epochs to generate");
  simulate->add_option("--seed", sim.seed, "Global seed (falls back to $V2V_SEED, then 0)");
  simulate->add_option("--policy", sim.policy, "Parameter policy: random|fixed");
  simulate->add_option("--c-pos", sim.c_pos, "Positive threshold range lo:hi");
  simulate->add_option("--c-neg", sim.c_neg, "Negative threshold range lo:hi");
  simulate->add_option("--sigma-bg", sim.sigma_bg, "Background noise sigma range lo:hi");
  simulate->add_option("--hot-frac", sim.hot_frac, "Hot pixel fraction range lo:hi");
  simulate->add_option("--hot-mag", sim.hot_mag, "Hot pixel magnitude range lo:hi");
  simulate->add_option("--gamma", sim.options.sample.conversion.gamma, "Reverse gamma exponent");
  simulate->add_option("--log-eps", sim.options.sample.conversion.log_eps, "Offset inside the log");
  simulate->add_option("--crop", sim.crop, "Static crop top:left:height:width");
  simulate->add_option("--degrade-prob", sim.options.sample.degrade.probability,
                       "Probability of dynamic-range degradation per sample");
  simulate->add_option("--degrade-scale", sim.degrade_scale, "Degradation scale range lo:hi");
  simulate->add_option("--workers", sim.workers, "Worker threads (default: all CPUs)");
  simulate->callback([&] { action = [&] { return cmd_simulate(sim.resolve(), out, err); }; });

  // convert-events
  ConvertOptions conv;
  auto* convert = app.add_subcommand("convert-events", "Bin an event stream into voxel files");
  convert->add_option("--events", conv.events, "Event file")->required();
  convert->add_option("--format", conv.format, "text|bin");
  convert->add_option("--bins", conv.bins, "Bins per voxel");
  convert->add_option("--repr", conv.repr, "discrete|interpolated");
  convert->add_option("--t0", conv.t0, "Window start (default: first event)");
  convert->add_option("--t1", conv.t1, "Window end (default: last event)");
  convert->add_option("--windows", conv.windows, "Split [t0,t1] into this many voxels");
  convert->add_option("--width", conv.width, "Sensor width (text input)");
  convert->add_option("--height", conv.height, "Sensor height (text input)");
  convert->add_flag("--sort", conv.sort, "Sort unsorted input instead of rejecting it");
  convert->add_option("--out", conv.out, "Output file (directory when --windows > 1)")->required();
  convert->callback([&] { action = [&] { return cmd_convert_events(conv, out, err); }; });

  // oracle-check
  OracleCheckConfig oracle;
  std::string oracle_size = "8x8";
  std::string oracle_regime = "equal-thresholds";
  std::optional<std::uint64_t> oracle_seed;
  std::optional<unsigned> oracle_workers;
  auto* check = app.add_subcommand("oracle-check", "Compare the voxel simulator against the event oracle");
  check->add_option("--trials", oracle.trials, "Randomized trials");
  check->add_option("--seed", oracle_seed, "Seed (falls back to $V2V_SEED, then 0)");
  check->add_option("--size", oracle_size, "Grid size HxW");
  check->add_option("--frames", oracle.frames, "Frames per trial (B+1)");
  check->add_option("--regime", oracle_regime, "equal-thresholds|monotonic|free");
  check->add_option("--step-sigma", oracle.step_sigma, "Std-dev of log-luminance steps");
  check->add_option("--sigma-bg", oracle.sigma_bg, "Background noise shared by both paths");
  check->add_option("--workers", oracle_workers, "Worker threads");
  check->callback([&] {
    action = [&] {
      oracle.size = parse_size(oracle_size, "--size");
      oracle.regime = parse_oracle_regime(oracle_regime);
      oracle.seed = oracle_seed ? *oracle_seed : seed_from_env(0);
      oracle.workers = oracle_workers ? *oracle_workers : default_workers();
      return cmd_oracle_check(oracle, out, err);
    };
  });

  // stats
  StatsOptions st;
  auto* stats_cmd = app.add_subcommand("stats", "Report dataset statistics from a manifest");
  stats_cmd->add_option("--manifest", st.manifest, "Manifest JSON")->required();
  stats_cmd->add_option("--bins", st.bins, "Override bins per voxel");
  stats_cmd->add_option("--voxels", st.voxels, "Override voxels per sequence");
  stats_cmd->callback([&] { action = [&] { return cmd_stats(st, out, err); }; });

  // bench
  BenchOptions bench;
  std::optional<unsigned> bench_workers;
  auto* bench_cmd = app.add_subcommand("bench", "Measure conversion throughput and storage");
  add_input_options(*bench_cmd, bench.input);
  bench_cmd->add_option("--bins", bench.plan.bins, "Bins per voxel (B)");
  bench_cmd->add_option("--voxels", bench.plan.voxels, "Voxels per sequence (V)");
  bench_cmd->add_option("--seed", bench.seed, "Seed");
  bench_cmd->add_option("--workers", bench_workers, "Worker threads");
  bench_cmd->add_option("--source-bytes", bench.source_bytes,
                        "Source size to compare against (default: measured input size)");
  bench_cmd->callback([&] {
    action = [&] {
      bench.workers = bench_workers ? *bench_workers : default_workers();
      return cmd_bench(bench, out, err);
    };
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("v2v");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace v2v::cli
