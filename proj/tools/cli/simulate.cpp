#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "v2v/errors.hpp"
#include "v2v/manifest.hpp"
#include "v2v/parallel.hpp"
#include "v2v/voxel_io.hpp"

namespace v2v::cli {
namespace {

struct Task {
  std::size_t scene = 0;
  std::size_t window = 0;
  std::uint64_t epoch = 0;
  FrameWindow frames;
  std::filesystem::path path;
};

void check_options(const SimulateOptions& o) {
  if (o.output.empty()) throw ConfigError("--output is required");
  if (o.epochs < 1) throw ConfigError("--epochs must be >= 1");
  if (o.workers < 1) throw ConfigError("--workers must be >= 1");
  const auto& r = o.sample.policy.ranges;
  if (!(r.c_plus.lo > 0.0)) throw ConfigError("--c-pos: threshold must be > 0");
  if (!(r.c_minus.lo > 0.0)) throw ConfigError("--c-neg: threshold must be > 0");
  if (r.sigma_bg.lo < 0.0) throw ConfigError("--sigma-bg: must be >= 0");
  if (r.hot_pixel_fraction.lo < 0.0 || r.hot_pixel_fraction.hi >= 1.0) {
    throw ConfigError("--hot-frac: must lie in [0,1)");
  }
  if (!(r.hot_pixel_magnitude.lo > 0.0)) throw ConfigError("--hot-mag: must be > 0");
  if (!(o.sample.conversion.gamma > 0.0)) throw ConfigError("--gamma: must be > 0");
  if (!(o.sample.conversion.log_eps > 0.0)) throw ConfigError("--log-eps: must be > 0");
  const auto& d = o.sample.degrade;
  if (!(d.probability >= 0.0 && d.probability <= 1.0)) {
    throw ConfigError("--degrade-prob: must lie in [0,1]");
  }
  if (!(d.scale.lo >= 1.0)) throw ConfigError("--degrade-scale: must be >= 1");
  if (o.sample.plan.bins < 1) throw ConfigError("--bins: must be >= 1");
  if (o.sample.plan.voxels < 1) throw ConfigError("--voxels: must be >= 1");
  r.validate();
}

}  // namespace

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  check_options(options);

  auto scenes = load_scenes(options.input);
  if (options.crop) {
    for (auto& s : scenes) {
      try {
        s.sequence = crop(s.sequence, *options.crop);
      } catch (const ConfigError& e) {
        throw ConfigError(std::string("--crop: ") + e.what() + " in scene '" +
                          s.sequence.scene_id + "'");
      }
    }
  }

  const fs::path root(options.output);
  const SlicePlan& plan = options.sample.plan;
  std::vector<Task> tasks;
  DatasetManifest manifest;
  manifest.plan = plan;
  for (std::size_t si = 0; si < scenes.size(); ++si) {
    const auto& seq = scenes[si].sequence;
    seq.validate();
    manifest.scenes.push_back({seq.scene_id, seq.frames.size(), seq.dims().width,
                               seq.dims().height, seq.frame_rate, scenes[si].source_bytes});
    const auto windows = plan_slices(seq.frames.size(), plan);
    if (windows.empty()) {
      err << "warning: scene '" << seq.scene_id << "' has " << seq.frames.size()
          << " frames, fewer than one " << plan.window_length() << "-frame window\n";
    }
    for (std::size_t w = 0; w < windows.size(); ++w) {
      for (int e = 0; e < options.epochs; ++e) {
        const std::string name = options.epochs == 1
                                     ? std::to_string(w) + ".v2vx"
                                     : std::to_string(w) + ".e" + std::to_string(e) + ".v2vx";
        tasks.push_back({si, w, static_cast<std::uint64_t>(e), windows[w],
                         root / seq.scene_id / name});
      }
    }
  }

  fs::create_directories(root);
  for (const auto& s : scenes) fs::create_directories(root / s.sequence.scene_id);

  err << "simulate: " << scenes.size() << " scene(s), " << tasks.size() << " sample(s), "
      << options.workers << " worker(s)\n";

  parallel_for(tasks.size(), options.workers, [&](std::size_t i) {
    const Task& t = tasks[i];
    const auto& frames = scenes[t.scene].sequence.frames;
    const auto window = std::span<const Frame>(frames).subspan(t.frames.start, t.frames.end - t.frames.start);
    const SequenceId id{options.seed, hash_name(scenes[t.scene].sequence.scene_id), t.window};
    const Sample sample = build_sample(window, options.sample, t.epoch, id);
    write_voxels(std::span<const DiscreteVoxel>(sample.voxels), t.path);
  });

  save_manifest(manifest, plan, root / "manifest.json");

  out << "scenes=" << scenes.size() << '\n';
  out << "samples=" << tasks.size() << '\n';
  out << "voxels=" << tasks.size() * static_cast<std::size_t>(plan.voxels) << '\n';
  out << "epochs=" << options.epochs << '\n';
  out << "manifest=" << (root / "manifest.json").string() << '\n';
  return kExitOk;
}

}  // namespace v2v::cli
