#include "doctest.h"
#include "symtrack/pipeline.hpp"

using namespace symtrack;

TEST_CASE("ablation sweep on a small scene") {
  AblationConfig cfg;
  cfg.sim.width = cfg.sim.height = 200;
  cfg.sim.frames = 30;
  cfg.sim.n_objects = 4;
  cfg.recordings = 2;
  cfg.trs = {1, 3};
  cfg.dropouts = {DropoutSpec::parse("none"), DropoutSpec::parse("uniform:1/5")};
  cfg.seed = 4;
  const AblationResult r = run_ablation(cfg);
  REQUIRE(r.rows.size() == 8);
  REQUIRE(r.summary.size() == 4);
  for (const AblationRow& row : r.rows)
    if (row.dropout == "none") {
      CHECK(row.disrupted.tracking.f() == 1.0);
      CHECK(row.retracked.tracking.f() == 1.0);
      CHECK(row.retracked.segmentation.f() == 1.0);
    }
  CHECK(r.summary[0].tr == 1);
  CHECK(r.summary[0].max_skip == 1);
  CHECK(ablation_to_json(cfg, r) == ablation_to_json(cfg, run_ablation(cfg)));

  AblationConfig empty = cfg;
  empty.trs.clear();
  CHECK_THROWS_AS(run_ablation(empty), Error);
}
