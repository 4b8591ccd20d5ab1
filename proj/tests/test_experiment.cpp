#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "latticecalc/error.hpp"
#include "latticecalc/experiment.hpp"

using namespace latcalc;

namespace {

const std::filesystem::path kConfigs = LATTICECALC_CONFIG_DIR;
const std::filesystem::path kData = LATTICECALC_TEST_DATA;

Report run_doc(const char* text) { return run(config_from_json(Json::parse(text))); }

}  // namespace

TEST(Config, TaskAndSeed) {
  const auto cfg = config_from_json(Json::parse(R"({"Y": {"kind": "lp", "p": 2}, "t": [1]})"), {}, Task::norm);
  EXPECT_EQ(cfg.task, Task::norm);
  EXPECT_EQ(cfg.seed, 0u);
  EXPECT_THROW(config_from_json(Json::parse(R"({"task": "norm"})"), {}, Task::krivine), InputError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"t": [1]})")), InputError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"task": "nope"})")), InputError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"task": "norm", "seed": -1})")), InputError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"task": "norm", "budget": {"polish": -1}})")), InputError);
  EXPECT_THROW(load_config(kData / "missing.json"), InputError);
  for (Task t : {Task::norm, Task::dualnorm, Task::krivine, Task::constant, Task::duality, Task::verify}) {
    EXPECT_EQ(task_from_string(to_string(t)), t);
  }
}

TEST(Run, Norm) {
  const Report r = run(load_config(kConfigs / "norm_l2.json"));
  EXPECT_EQ(r.status, kOk);
  EXPECT_DOUBLE_EQ(r.json["results"]["value"].get<double>(), 5.0);
  const Report tau = run_doc(R"({"task": "norm", "Y": {"kind": "lp", "p": 1},
      "X": {"dim": 2, "norm": {"kind": "lp", "p": 2}}, "tuple": [[1, 0], [0, 1]]})");
  EXPECT_EQ(tau.status, kOk);
  EXPECT_NEAR(tau.json["results"]["value"].get<double>(), std::sqrt(2.0), 1e-12);
}

TEST(Run, DualNormWithHolder) {
  const Report r = run_doc(R"({"task": "dualnorm", "Y": {"kind": "lp", "p": 3},
      "beta": [1, -2], "alpha": [0.5, 0.25]})");
  EXPECT_EQ(r.status, kOk);
  EXPECT_NEAR(r.json["results"]["value"].get<double>(), std::pow(1 + std::pow(2.0, 1.5), 1 / 1.5), 1e-12);
  ASSERT_EQ(r.json["checks"].size(), 1u);
  EXPECT_TRUE(r.json["checks"][0]["passed"].get<bool>());
  EXPECT_EQ(run(load_config(kConfigs / "dualnorm_orlicz.json")).status, kOk);
}

TEST(Run, KrivineProjection) {
  const Report r = run_doc(R"({"task": "krivine", "X": {"dim": 3, "norm": {"kind": "lp", "p": 2}},
      "tuple": [[1, 2, 3], [-4, 5, -6]], "h": {"kind": "projection", "j": 2}})");
  EXPECT_EQ(r.status, kOk);
  const std::vector<double> v = r.json["results"]["value"].get<std::vector<double>>();
  EXPECT_EQ(v, (std::vector<double>{-4, 5, -6}));
  EXPECT_EQ(run(load_config(kConfigs / "krivine_join.json")).status, kOk);
}

TEST(Run, ConstantAndDuality) {
  const Report c = run(load_config(kConfigs / "constant_random.json"));
  EXPECT_EQ(c.status, kOk);
  EXPECT_TRUE(c.json["results"].contains("brute_force"));
  const Report file = run(load_config(kConfigs / "duality_file.json"));
  EXPECT_EQ(file.status, kOk);
  EXPECT_LE(file.json["results"]["rel_gap"].get<double>(), 5e-2);
  const Report id = run(load_config(kConfigs / "duality_identity.json"));
  EXPECT_EQ(id.status, kOk);
  EXPECT_NEAR(id.json["results"]["convex_n"].get<double>(), 1.0, 1e-6);
}

TEST(Run, StatusCodes) {
  const Report bad = run(load_config(kData / "bad_exponent.json"));
  EXPECT_EQ(bad.status, kInputError);
  EXPECT_TRUE(bad.json.contains("error"));
  EXPECT_FALSE(bad.json["passed"].get<bool>());

  const Report fail = run(load_config(kData / "failing_gap.json"));
  EXPECT_EQ(fail.status, kCheckFailure);
  const Json& check = fail.json["checks"][0];
  EXPECT_FALSE(check["passed"].get<bool>());
  EXPECT_EQ(check["seed"].get<std::uint64_t>(), 3u);
  EXPECT_TRUE(check.contains("inputs"));
  EXPECT_TRUE(check.contains("inputs_digest"));

  const Report slow = run(load_config(kData / "nonconvergent.json"));
  EXPECT_EQ(slow.status, kNonconvergent);
  EXPECT_FALSE(slow.json["converged"].get<bool>());

  EXPECT_EQ(run_doc(R"({"task": "duality", "Y": {"kind": "lp", "p": 2}, "n": 1,
      "E": {"dim": 4, "norm": {"kind": "lp", "p": 2}}, "X": {"dim": 2, "norm": {"kind": "lp", "p": 2}},
      "operator": {"matrix": [[1, 2], [3, 4]]}})").status, kInputError);
  EXPECT_EQ(run_doc(R"({"task": "constant", "Y": {"kind": "lp", "p": 2},
      "E": {"dim": 4, "norm": {"kind": "lp", "p": 2}}, "X": {"dim": 1, "norm": {"kind": "lp", "p": 2}},
      "operator": {"random": {"dims": [1, 4]}}, "n_max": 1, "budget": {"restarts": 2},
      "brute_force": {"n": 2}})").status, kInputError);
}

TEST(Run, ReplayIsByteIdentical) {
  auto cfg = load_config(kConfigs / "constant_random.json");
  const std::string a = render(run(cfg));
  const std::string b = render(run(cfg));
  EXPECT_EQ(a, b);
  cfg.seed = 43;
  EXPECT_NE(render(run(cfg)), a);
  EXPECT_EQ(a.back(), '\n');
}

TEST(Run, QuickVerify) {
  auto cfg = load_config(kConfigs / "verify_quick.json");
  const Report r = run(cfg);
  EXPECT_EQ(r.status, kOk) << r.json["checks"].dump();
  EXPECT_EQ(render(r), render(run(cfg)));
}
