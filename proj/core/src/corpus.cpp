// Copyright 2026 The Puppet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "puppet/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <utility>

#include "puppet/errors.hpp"
#include "puppet/events.hpp"

namespace puppet {

namespace {

// Distance contract of the generated corpus (hamming bits). Families stay
// tight, distinct families stay inside a band that makes DBSCAN sweeps show
// a plateau below kInterMin and a complete collapse by kInterMax.
constexpr int kIntraMax = 8;
constexpr int kInterMin = 24;
constexpr int kInterMax = 40;
// Family bases aim for the middle of the band to leave variants slack.
constexpr int kBaseBandMin = 27;
constexpr int kBaseBandMax = 37;
constexpr int kMaxAttempts = 600;

constexpr const char* kContainerClasses[] = {"LinearLayout", "FrameLayout",
                                             "RelativeLayout"};
constexpr const char* kLeafClasses[] = {"Button", "TextView", "ImageView",
                                        "CheckBox"};

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t acc = 0x243f6a8885a308d3ULL;
  for (std::uint64_t part : parts) {
    acc = SplitMix64(acc ^ part).next();
  }
  return acc;
}

std::string two_digits(std::size_t value) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%02zu", value);
  return buf;
}

std::string app_id_of(std::size_t family, std::size_t variant) {
  return "fam" + two_digits(family) + "_v" + two_digits(variant);
}

struct HierarchyBuilder {
  SplitMix64& rng;
  std::set<std::uint32_t> used_hashes;

  std::uint32_t fresh_hash() {
    while (true) {
      const auto h = static_cast<std::uint32_t>(rng.next());
      if (h != 0 && used_hashes.insert(h).second) return h;
    }
  }

  ConsumePolicy random_policy() {
    const std::uint64_t roll = rng.bounded(10);
    if (roll < 4) return ConsumePolicy::kConsumeByListener;
    if (roll < 7) return ConsumePolicy::kConsumeBySelf;
    return ConsumePolicy::kPass;
  }

  ViewNode make_leaf(const Rect& slot) {
    ViewNode leaf;
    leaf.class_name = kLeafClasses[rng.bounded(std::size(kLeafClasses))];
    leaf.hash_code = fresh_hash();
    leaf.policy = random_policy();
    // Inset so siblings never touch.
    const std::int32_t mx = std::min<std::int32_t>(4, slot.width() / 8);
    const std::int32_t my = std::min<std::int32_t>(4, slot.height() / 8);
    leaf.bounds = {slot.left + mx, slot.top + my, slot.right - mx,
                   slot.bottom - my};
    return leaf;
  }

  // Splits `area` into 2..3 slots along the given axis with random
  // proportions, recursing until depth_left runs out or the area is small.
  ViewNode make_subtree(const Rect& area, int depth_left, bool vertical) {
    const bool too_small = area.width() < 48 || area.height() < 48;
    if (depth_left <= 0 || too_small) return make_leaf(area);

    ViewNode group;
    group.class_name =
        kContainerClasses[rng.bounded(std::size(kContainerClasses))];
    group.hash_code = fresh_hash();
    group.policy = ConsumePolicy::kPass;
    group.bounds = area;

    const int parts = 2 + static_cast<int>(rng.bounded(2));
    const std::int32_t span = vertical ? area.height() : area.width();
    std::vector<std::int32_t> cuts{0};
    for (int i = 1; i < parts; ++i) {
      // Cut positions at 30..70% of each remaining stretch keep the slots
      // usable.
      const std::int32_t lo = span * i / parts - span / 10;
      const std::int32_t hi = span * i / parts + span / 10;
      cuts.push_back(
          static_cast<std::int32_t>(rng.range(std::max<std::int64_t>(1, lo),
                                              std::max<std::int64_t>(2, hi))));
    }
    cuts.push_back(span);
    std::sort(cuts.begin(), cuts.end());

    for (int i = 0; i < parts; ++i) {
      Rect slot = area;
      if (vertical) {
        slot.top = area.top + cuts[i];
        slot.bottom = area.top + cuts[i + 1];
      } else {
        slot.left = area.left + cuts[i];
        slot.right = area.left + cuts[i + 1];
      }
      if (slot.width() <= 8 || slot.height() <= 8) continue;
      group.children.push_back(make_subtree(slot, depth_left - 1, !vertical));
    }
    if (group.children.empty()) return make_leaf(area);
    return group;
  }
};

ViewHierarchy make_base_hierarchy(const CorpusSpec& spec, std::size_t family,
                                  std::uint64_t seed) {
  SplitMix64 rng(seed);
  HierarchyBuilder builder{rng, {}};

  ViewHierarchy h;
  h.activity_name = "app.fam" + two_digits(family) + ".MainActivity";
  h.activity_hash = builder.fresh_hash();
  h.screen = spec.screen;

  const int depth = static_cast<int>(
      rng.range(spec.hierarchy_depth.min, spec.hierarchy_depth.max));
  ViewNode root;
  root.class_name = "FrameLayout";
  root.hash_code = builder.fresh_hash();
  root.policy = ConsumePolicy::kPass;
  root.bounds = {0, 0, spec.screen.width, spec.screen.height};
  root.children.push_back(builder.make_subtree(
      {0, 0, spec.screen.width, spec.screen.height}, depth - 1, true));
  h.root = std::move(root);
  return h;
}

void perturb_leaves(ViewNode& node, const Rect& parent_bounds,
                    const Perturbation& pert, SplitMix64& rng) {
  if (node.children.empty()) {
    Rect b = node.bounds;
    std::int32_t w = b.width();
    std::int32_t h = b.height();
    if (pert.max_resize_frac > 0.0) {
      const double fw = 1.0 - pert.max_resize_frac * rng.unit();
      const double fh = 1.0 - pert.max_resize_frac * rng.unit();
      w = std::max<std::int32_t>(2, static_cast<std::int32_t>(std::llround(w * fw)));
      h = std::max<std::int32_t>(2, static_cast<std::int32_t>(std::llround(h * fh)));
    }
    std::int32_t left = b.left;
    std::int32_t top = b.top;
    if (pert.max_shift_px > 0) {
      left += static_cast<std::int32_t>(
          rng.range(-pert.max_shift_px, pert.max_shift_px));
      top += static_cast<std::int32_t>(
          rng.range(-pert.max_shift_px, pert.max_shift_px));
    }
    left = std::clamp(left, parent_bounds.left, parent_bounds.right - w);
    top = std::clamp(top, parent_bounds.top, parent_bounds.bottom - h);
    node.bounds = {left, top, left + w, top + h};
    return;
  }
  for (ViewNode& child : node.children) {
    perturb_leaves(child, node.bounds, pert, rng);
  }
}

ViewHierarchy perturbed_hierarchy(const ViewHierarchy& base,
                                  const Perturbation& pert,
                                  std::uint64_t seed) {
  ViewHierarchy variant = base;
  SplitMix64 rng(seed);
  perturb_leaves(variant.root, variant.root.bounds, pert, rng);
  return variant;
}

void paint_rect(GrayImage& img, const Rect& rect, std::uint32_t hash) {
  SplitMix64 rng(0xc0ffee11dull ^ (static_cast<std::uint64_t>(hash) << 1));
  const int base = 24 + static_cast<int>(rng.bounded(200));
  const int pattern = static_cast<int>(rng.bounded(4));
  const int period = 4 + static_cast<int>(rng.bounded(13));
  const int amp = 10 + static_cast<int>(rng.bounded(26));

  const std::int32_t x0 = std::max<std::int32_t>(rect.left, 0);
  const std::int32_t y0 = std::max<std::int32_t>(rect.top, 0);
  const std::int32_t x1 = std::min<std::int32_t>(rect.right, img.width);
  const std::int32_t y1 = std::min<std::int32_t>(rect.bottom, img.height);
  for (std::int32_t y = y0; y < y1; ++y) {
    for (std::int32_t x = x0; x < x1; ++x) {
      int v = base;
      switch (pattern) {
        case 1: v += ((y - y0) / period) % 2 ? amp : -amp; break;
        case 2: v += ((x - x0) / period) % 2 ? amp : -amp; break;
        case 3:
          v += (((x - x0) / period + (y - y0) / period) % 2) ? amp : -amp;
          break;
        default: break;  // flat fill
      }
      img.at(x, y) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
  }
}

void paint_node(GrayImage& img, const ViewNode& node) {
  paint_rect(img, node.bounds, node.hash_code);
  for (const ViewNode& child : node.children) paint_node(img, child);
}

struct BuiltApp {
  std::string app_id;
  std::size_t family = 0;
  std::size_t variant = 0;
  ViewHierarchy hierarchy;
  GrayImage screenshot;
  PerceptualHash hash;
};

struct BuiltCorpus {
  std::vector<BuiltApp> apps;
  int max_intra = 0;
  int min_inter = 64;
  int max_inter = 0;
};

GrayImage screenshot_of(const ViewHierarchy& hierarchy,
                        std::int32_t noise_amplitude,
                        std::uint64_t noise_seed) {
  GrayImage img = render_hierarchy(hierarchy);
  add_pixel_noise(img, noise_amplitude, noise_seed);
  return img;
}

// Generates every family under the distance contract. Pure function of the
// spec, so byte-identical on every run.
BuiltCorpus build_corpus(const CorpusSpec& spec) {
  if (spec.n_families < 1 || spec.variants_per_family < 1) {
    throw Error(ErrorCode::kIoFailure, "corpus spec needs at least 1 family and 1 variant");
  }
  BuiltCorpus corpus;

  for (std::size_t family = 0; family < spec.n_families; ++family) {
    bool family_done = false;
    for (int attempt = 0; attempt < kMaxAttempts && !family_done; ++attempt) {
      const std::uint64_t base_seed =
          mix_seed({spec.seed, family, 0x6261736575ULL, static_cast<std::uint64_t>(attempt)});
      ViewHierarchy base = make_base_hierarchy(spec, family, base_seed);
      BuiltApp base_app{app_id_of(family, 0), family, 0, base,
                        screenshot_of(base, 0, 0), {}};
      base_app.hash = phash(base_app.screenshot);

      bool base_ok = true;
      for (const BuiltApp& other : corpus.apps) {
        const int d = hamming(base_app.hash, other.hash);
        if (d < kBaseBandMin || d > kBaseBandMax) {
          base_ok = false;
          break;
        }
      }
      if (!base_ok) continue;

      std::vector<BuiltApp> family_apps{std::move(base_app)};
      bool variants_ok = true;
      for (std::size_t variant = 1;
           variant <= spec.variants_per_family && variants_ok; ++variant) {
        bool placed = false;
        for (int vattempt = 0; vattempt < kMaxAttempts; ++vattempt) {
          const std::uint64_t vseed =
              mix_seed({spec.seed, family, static_cast<std::uint64_t>(attempt),
                        variant, static_cast<std::uint64_t>(vattempt)});
          ViewHierarchy vh =
              perturbed_hierarchy(base, spec.perturbation, vseed);
          BuiltApp app{app_id_of(family, variant), family, variant,
                       std::move(vh), {}, {}};
          app.screenshot = screenshot_of(
              app.hierarchy, spec.perturbation.noise_amplitude, vseed ^ 0x55aaULL);
          app.hash = phash(app.screenshot);

          bool fits = true;
          for (const BuiltApp& member : family_apps) {
            if (hamming(app.hash, member.hash) > kIntraMax) {
              fits = false;
              break;
            }
          }
          if (fits) {
            for (const BuiltApp& other : corpus.apps) {
              const int d = hamming(app.hash, other.hash);
              if (d < kInterMin || d > kInterMax) {
                fits = false;
                break;
              }
            }
          }
          if (fits) {
            family_apps.push_back(std::move(app));
            placed = true;
            break;
          }
        }
        if (!placed) variants_ok = false;
      }

      if (variants_ok) {
        for (BuiltApp& app : family_apps) {
          corpus.apps.push_back(std::move(app));
        }
        family_done = true;
      }
    }
    if (!family_done) {
      throw Error(ErrorCode::kIoFailure,
                  "corpus distance constraints unsatisfiable for family " +
                      std::to_string(family) +
                      "; relax the perturbation or change the seed");
    }
  }

  for (std::size_t a = 0; a < corpus.apps.size(); ++a) {
    for (std::size_t b = a + 1; b < corpus.apps.size(); ++b) {
      const int d = hamming(corpus.apps[a].hash, corpus.apps[b].hash);
      if (corpus.apps[a].family == corpus.apps[b].family) {
        corpus.max_intra = std::max(corpus.max_intra, d);
      } else {
        corpus.min_inter = std::min(corpus.min_inter, d);
        corpus.max_inter = std::max(corpus.max_inter, d);
      }
    }
  }
  return corpus;
}

const BuiltApp& pick_app(const BuiltCorpus& corpus, const CorpusSpec& spec,
                         std::size_t family, std::size_t variant) {
  if (family >= spec.n_families || variant > spec.variants_per_family) {
    throw Error(ErrorCode::kUnknownFamily,
                "no app for family " + std::to_string(family) + " variant " +
                    std::to_string(variant));
  }
  return corpus.apps[family * (spec.variants_per_family + 1) + variant];
}

void collect_consuming_leaves(const ViewNode& node,
                              std::vector<const ViewNode*>& out) {
  if (node.children.empty()) {
    if (node.policy != ConsumePolicy::kPass) out.push_back(&node);
    return;
  }
  for (const ViewNode& child : node.children) {
    collect_consuming_leaves(child, out);
  }
}

}  // namespace

GrayImage render_hierarchy(const ViewHierarchy& hierarchy) {
  GrayImage img = GrayImage::filled(hierarchy.screen.width,
                                    hierarchy.screen.height, 16);
  paint_node(img, hierarchy.root);
  return img;
}

void add_pixel_noise(GrayImage& image, std::int32_t amplitude,
                     std::uint64_t seed) {
  if (amplitude <= 0) return;
  SplitMix64 rng(seed ^ 0x9d2c5680ULL);
  for (std::uint8_t& pixel : image.pixels) {
    const int v = pixel + static_cast<int>(rng.range(-amplitude, amplitude));
    pixel = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
  }
}

ViewHierarchy corpus_hierarchy(const CorpusSpec& spec, std::size_t family,
                               std::size_t variant) {
  const BuiltCorpus corpus = build_corpus(spec);
  return pick_app(corpus, spec, family, variant).hierarchy;
}

GrayImage corpus_screenshot(const CorpusSpec& spec, std::size_t family,
                            std::size_t variant) {
  const BuiltCorpus corpus = build_corpus(spec);
  return pick_app(corpus, spec, family, variant).screenshot;
}

CorpusManifest generate_corpus(const CorpusSpec& spec,
                               const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  const BuiltCorpus corpus = build_corpus(spec);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure, "cannot create " + out_dir.string());
  }

  std::string labels = "app_id,family\n";
  CorpusManifest manifest;
  manifest.max_intra_distance = corpus.max_intra;
  manifest.min_inter_distance = corpus.min_inter;
  manifest.max_inter_distance = corpus.max_inter;

  for (const BuiltApp& app : corpus.apps) {
    const fs::path app_dir = out_dir / app.app_id;
    fs::create_directories(app_dir, ec);
    if (ec) {
      throw Error(ErrorCode::kIoFailure, "cannot create " + app_dir.string());
    }
    write_pgm(app_dir / "screen.pgm", app.screenshot);
    std::ofstream hier(app_dir / "view.hier", std::ios::binary | std::ios::trunc);
    hier << serialize_hierarchy_dump(app.hierarchy);
    if (!hier) {
      throw Error(ErrorCode::kIoFailure, "cannot write hierarchy for " + app.app_id);
    }
    labels += app.app_id + "," + std::to_string(app.family) + "\n";
    manifest.apps.push_back({app.app_id, app.family, app.variant, app.hash});
  }

  std::ofstream labels_out(out_dir / "labels.csv",
                           std::ios::binary | std::ios::trunc);
  labels_out << labels;
  if (!labels_out) {
    throw Error(ErrorCode::kIoFailure, "cannot write labels.csv");
  }
  return manifest;
}

SessionFiles generate_session(const CorpusSpec& spec, std::size_t family,
                              std::size_t variant,
                              const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  const BuiltCorpus corpus = build_corpus(spec);
  const BuiltApp& app = pick_app(corpus, spec, family, variant);

  std::vector<const ViewNode*> targets;
  collect_consuming_leaves(app.hierarchy.root, targets);
  if (targets.empty()) {
    // Every leaf passed; tap the root area instead so the session is never
    // empty. The activity will consume.
    targets.push_back(&app.hierarchy.root);
  }

  SplitMix64 rng(mix_seed({spec.seed, family, variant, 0x74617073ULL}));
  const std::size_t taps = std::min<std::size_t>(5, targets.size());
  std::vector<InputEvent> events;
  std::int64_t t = 1000;
  for (std::size_t i = 0; i < taps; ++i) {
    const Rect& b = targets[i]->bounds;
    const auto tx = static_cast<std::int32_t>(
        b.left + 1 + rng.bounded(std::max<std::int64_t>(1, b.width() - 1)));
    const auto ty = static_cast<std::int32_t>(
        b.top + 1 + rng.bounded(std::max<std::int64_t>(1, b.height() - 1)));
    events.push_back({t, EventType::kTouch, EventAction::kDown, tx, ty, 0});
    events.push_back({t + 80, EventType::kTouch, EventAction::kUp, tx, ty, 0});
    t += 500;
  }

  std::error_code ec;
  fs::create_directories(out_dir / "dumps", ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure, "cannot create " + out_dir.string());
  }

  SessionFiles files;
  files.events = out_dir / "events.csv";
  files.dumps_dir = out_dir / "dumps";

  std::ofstream events_out(files.events, std::ios::binary | std::ios::trunc);
  events_out << serialize_event_log(events);
  if (!events_out) {
    throw Error(ErrorCode::kIoFailure, "cannot write event log");
  }
  std::ofstream dump_out(files.dumps_dir / "0.hier",
                         std::ios::binary | std::ios::trunc);
  dump_out << serialize_hierarchy_dump(app.hierarchy);
  if (!dump_out) {
    throw Error(ErrorCode::kIoFailure, "cannot write dump");
  }
  return files;
}

}  // namespace puppet
