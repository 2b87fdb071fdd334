#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "nvcache/cachesim.hpp"
#include "nvcache/errors.hpp"
#include "nvcache/workload.hpp"

using namespace nvcache;

TEST_CASE("shipped profile parses and spans the observed rw-ratio range") {
  auto stats = parse_profile_csv(testutil::read_data("workloads.csv"));
  REQUIRE(stats.size() == 13);

  double lo = 1e9, hi = 0;
  for (const auto& s : stats) {
    double r = rw_ratio(s);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(lo == 2.0);
  CHECK(hi == 26.0);

  auto resnet = std::find_if(stats.begin(), stats.end(), [](const auto& s) {
    return s.name == "ResNet-18" && s.phase == Phase::Inference;
  });
  REQUIRE(resnet != stats.end());
  CHECK(resnet->l2_reads == 26000000);
  CHECK(resnet->l2_writes == 1000000);
  CHECK(rw_ratio(*resnet) == 26.0);
  CHECK(resnet->batch_size == 4);
}

TEST_CASE("profile rows accept scientific-notation counts") {
  std::string csv = std::string(kProfileCsvHeader) +
                    "\nResNet18,Inference,4,2.6e7,1.0e6,3e6,8e5,\n";
  auto stats = parse_profile_csv(csv);
  REQUIRE(stats.size() == 1);
  CHECK(stats[0].l2_reads == 26000000);
  CHECK(stats[0].l2_writes == 1000000);
  CHECK(rw_ratio(stats[0]) == 26.0);
  CHECK(!stats[0].exec_time_s.has_value());
}

TEST_CASE("profile validation") {
  std::string header(kProfileCsvHeader);

  SUBCASE("zero transactions parse fine") {
    auto stats = parse_profile_csv(header + "\nempty,HPC,1,0,0,0,0,\n");
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].l2_reads + stats[0].l2_writes == 0);
  }
  SUBCASE("negative counts") {
    CHECK_THROWS_WITH_AS(parse_profile_csv(header + "\nw,HPC,1,1,1,-1,0,\n"),
                         doctest::Contains("NegativeCount"), Error);
  }
  SUBCASE("header mismatch") {
    CHECK_THROWS_WITH_AS(parse_profile_csv("name,phase\nw,HPC\n"),
                         doctest::Contains("SchemaMismatch"), Error);
  }
  SUBCASE("unknown phase") {
    CHECK_THROWS_WITH_AS(parse_profile_csv(header + "\nw,Validation,1,1,1,0,0,\n"),
                         doctest::Contains("SchemaMismatch"), Error);
  }
  SUBCASE("fractional count") {
    CHECK_THROWS_WITH_AS(parse_profile_csv(header + "\nw,HPC,1,1.5,1,0,0,\n"),
                         doctest::Contains("NonNumeric"), Error);
  }
  SUBCASE("version marker from the future") {
    CHECK_THROWS_WITH_AS(parse_profile_csv("# nvcache-dse v2\n" + header + "\n"),
                         doctest::Contains("SchemaMismatch"), Error);
  }
}

TEST_CASE("rw_ratio edge cases") {
  WorkloadStats s;
  s.name = "w";
  s.l2_reads = 5;
  s.l2_writes = 5;
  CHECK(rw_ratio(s) == 1.0);
  s.l2_writes = 0;
  CHECK_THROWS_WITH_AS(rw_ratio(s), doctest::Contains("ZeroWrites"), Error);
}

TEST_CASE("profile round-trip stability") {
  auto stats = parse_profile_csv(testutil::read_data("workloads.csv"));
  auto again = parse_profile_csv(write_profile_csv(stats));
  CHECK(again == stats);

  WorkloadStats with_time;
  with_time.name = "timed";
  with_time.phase = Phase::Training;
  with_time.batch_size = 64;
  with_time.l2_reads = 123456789;
  with_time.l2_writes = 987654;
  with_time.dram_reads = 1000;
  with_time.dram_writes = 2000;
  with_time.exec_time_s = 1.25;
  std::vector<WorkloadStats> v{with_time};
  CHECK(parse_profile_csv(write_profile_csv(v)) == v);
}

TEST_CASE("gen_trace is deterministic per seed") {
  SyntheticTraceSpec spec;
  spec.length = 20000;
  spec.working_set_bytes = 1 << 20;
  spec.seed = 42;
  auto a = gen_trace(spec);
  auto b = gen_trace(spec);
  CHECK(a == b);
  spec.seed = 43;
  CHECK(gen_trace(spec) != a);
}

TEST_CASE("generated addresses stay inside the working set") {
  SyntheticTraceSpec spec;
  spec.length = 50000;
  spec.working_set_bytes = 123456;
  spec.hot_fraction = 0.25;
  spec.seed = 7;
  for (const auto& e : gen_trace(spec)) CHECK(e.address < spec.working_set_bytes);
}

TEST_CASE("empirical read share tracks read_probability") {
  // 3-sigma binomial bound per (seed, p) point; the 0.96/1e6 case also
  // satisfies the coarser +-0.005 window.
  for (auto [p, seed] : {std::pair{0.96, 1001ull}, {0.5, 1002ull}, {0.1, 1003ull}}) {
    SyntheticTraceSpec spec;
    spec.length = 1000000;
    spec.working_set_bytes = 1 << 22;
    spec.read_probability = p;
    spec.seed = seed;
    std::uint64_t reads = 0;
    gen_trace(spec, [&](const TraceEvent& e) { reads += e.op == MemOp::Read; });
    double share = static_cast<double>(reads) / static_cast<double>(spec.length);
    double sigma = std::sqrt(p * (1 - p) / static_cast<double>(spec.length));
    CHECK(std::fabs(share - p) <= 3 * sigma);
    if (p == 0.96) CHECK(std::fabs(share - p) <= 0.005);
  }
}

TEST_CASE("fully resident hot set misses only during warmup") {
  SyntheticTraceSpec spec;
  spec.length = 30000;
  spec.working_set_bytes = 64 * 128;  // 64 lines, all hot
  spec.hot_fraction = 1.0;
  spec.hot_access_probability = 1.0;
  spec.seed = 21;
  auto trace = gen_trace(spec);

  CacheGeometry geom;
  geom.line_size_bytes = 128;
  geom.ways = 8;
  geom.capacity_bytes = 8 * 128 * 16;  // 16 sets, 128 lines >= hot set
  auto result = simulate(trace, geom, /*warmup_events=*/10000);
  CHECK(result.misses == 0);
  CHECK(result.accesses == 20000);
  CHECK(result.hits == 20000);
}

TEST_CASE("trace spec validation") {
  SyntheticTraceSpec spec;
  spec.length = 10;
  spec.working_set_bytes = 1024;
  spec.hot_fraction = 0.001;  // under one line
  CHECK_THROWS_WITH_AS(gen_trace(spec), doctest::Contains("RangeViolation"),
                       Error);
  spec.hot_fraction = 1.5;
  CHECK_THROWS_WITH_AS(gen_trace(spec), doctest::Contains("RangeViolation"),
                       Error);
  spec.hot_fraction = 0.5;
  spec.length = 0;
  CHECK_THROWS_WITH_AS(gen_trace(spec), doctest::Contains("RangeViolation"),
                       Error);
}

TEST_CASE("trace text format round-trips") {
  SyntheticTraceSpec spec;
  spec.length = 5000;
  spec.working_set_bytes = 1 << 24;
  spec.seed = 77;
  auto events = gen_trace(spec);
  auto text = write_trace(events);
  CHECK(text.rfind("# nvcache-dse v1\n", 0) == 0);
  CHECK(parse_trace(text) == events);
}

TEST_CASE("trace parser rejects malformed lines") {
  CHECK_THROWS_WITH_AS(parse_trace("# nvcache-dse v1\nX 1f\n"),
                       doctest::Contains("SchemaMismatch"), Error);
  CHECK_THROWS_WITH_AS(parse_trace("R zz\n"), doctest::Contains("NonNumeric"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_trace("# nvcache-dse v9\nR 1f\n"),
                       doctest::Contains("SchemaMismatch"), Error);
}
