#include <gtest/gtest.h>

#include "sl2forms/serialize.hpp"
#include "sl2forms/verifier.hpp"

using namespace sl2forms;

TEST(Parsing, QuaternionList) {
  const auto q = parse_quaternion_list("-1,-1;2,3;1/2,-5");
  ASSERT_EQ(q.size(), 3u);
  EXPECT_EQ(q[0], std::make_pair(Rational(-1), Rational(-1)));
  EXPECT_EQ(q[2].first, Rational(1, 2));
  EXPECT_THROW(parse_quaternion_list("2"), parse_error);
  EXPECT_THROW(parse_quaternion_list("0,3"), parse_error);
  EXPECT_THROW(parse_quaternion_list("2,3;"), parse_error);
  EXPECT_THROW(parse_quaternion_list("x,3"), parse_error);
}

TEST(Parsing, FieldList) {
  const auto f = parse_field_list("Q,Fp:3..11,F2e:1..2,QSqrt:2");
  ASSERT_EQ(f.size(), 1u + 4u + 2u + 1u);
  EXPECT_EQ(field_name(f[0]), "Q");
  EXPECT_EQ(field_name(f[4]), "Fp:11");
  EXPECT_THROW(parse_field_list("Q,,Fp:5"), parse_error);
  EXPECT_THROW(parse_field("Fp:9"), parse_error);
  EXPECT_THROW(parse_field("QSqrt:4"), parse_error);
  EXPECT_THROW(parse_field("R"), parse_error);
}

TEST(Sweeps, SmallRunsPass) {
  SweepConfig cfg;
  cfg.n_max = 20;
  EXPECT_EQ(cmd_verify_thm_b(cfg).exit_code(), 0);
  cfg.split_n_max = 12;
  cfg.n_max = 6;
  const auto a = cmd_verify_thm_a(cfg);
  EXPECT_EQ(a.exit_code(), 0);
  EXPECT_EQ(a.cases.size(), 6u + 3u * 4u);
  cfg.n_max = 12;
  EXPECT_EQ(cmd_verify_char2(cfg).exit_code(), 0);
  cfg.n_max = 40;
  cfg.parity_n_max = 60;
  EXPECT_EQ(cmd_verify_lemmas(cfg).exit_code(), 0);
}

TEST(Sweeps, RejectsBadFields) {
  SweepConfig cfg;
  cfg.fields = "QSqrt:2";
  EXPECT_THROW(cmd_verify_thm_b(cfg), parse_error);
  cfg.fields = "Fp:5";
  EXPECT_THROW(cmd_verify_thm_a(cfg), parse_error);
  EXPECT_THROW(cmd_verify_char2(cfg), parse_error);
}

TEST(Sweeps, SplitQuaternionInNonsplitList) {
  SweepConfig cfg;
  cfg.n_max = 4;
  cfg.split_n_max = 0;
  cfg.quaternions = {{1, 5}, {2, 7}};
  const auto r = cmd_verify_thm_a(cfg);
  EXPECT_EQ(r.exit_code(), 0);
  for (const auto& c : r.cases) EXPECT_TRUE(c.inputs["split"].get<bool>());
}

// Job count and repetition do not change the report.
TEST(Sweeps, Deterministic) {
  SweepConfig cfg;
  cfg.n_max = 16;
  cfg.split_n_max = 16;
  cfg.fields = "F2e:1..3";
  const auto c1 = cmd_verify_char2(cfg).to_json(false);
  cfg.jobs = 4;
  const auto c4 = cmd_verify_char2(cfg).to_json(false);
  EXPECT_EQ(c1.dump(), c4.dump());
  cfg.fields = "";
  cfg.jobs = 1;
  const auto a1 = cmd_verify_thm_a(cfg).to_json(false).dump();
  cfg.jobs = 3;
  EXPECT_EQ(a1, cmd_verify_thm_a(cfg).to_json(false).dump());
  EXPECT_EQ(a1, cmd_verify_thm_a(cfg).to_json(false).dump());
}

TEST(RunCases, ExceptionsBecomeFailures) {
  std::vector<CaseTask> tasks;
  tasks.push_back([] { return CaseRecord{"ok", {}, {}, {}, true, {}}; });
  tasks.push_back([]() -> CaseRecord { throw domain_error("boom"); });
  for (unsigned jobs : {1u, 2u}) {
    const auto out = run_cases(tasks, jobs);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_TRUE(out[0].pass);
    EXPECT_FALSE(out[1].pass);
    EXPECT_NE(out[1].note.find("boom"), std::string::npos);
  }
  VerificationReport r;
  r.cases = run_cases(tasks, 1);
  EXPECT_EQ(r.failures(), 1u);
  EXPECT_EQ(r.exit_code(), 1);
  const auto j = r.to_json(false);
  EXPECT_FALSE(j.contains("wall_time_s"));
  EXPECT_EQ(j["summary"]["failures"], 1);
  EXPECT_EQ(j["cases"][1]["verdict"], "fail");
}

TEST(Serialize, RoundTrips) {
  const RationalField Q;
  const auto g = weyl_form_gram(4, Q);
  const auto back = matrix_from_json(Q, matrix_to_json(Q, g.gram()));
  EXPECT_TRUE(matrices_equal(Q, back, g.gram()));
  const auto rec = to_json(invariant_record(phi_even(6, Q)));
  EXPECT_EQ(rec["dim"], 2);
  EXPECT_EQ(rec["disc"], "15");
  const auto f = to_json(invariant_record(diagonal_form(PrimeField(5), {1, 2})));
  EXPECT_EQ(f["disc"], "nonsquare");
  const auto c = to_json(expected_char2_class(8));
  EXPECT_TRUE(c["arf"].is_null());
  EXPECT_EQ(c["quasilinear"], 1);
}
