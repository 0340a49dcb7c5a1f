#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "actstream/dataset.hpp"
#include "test_support.hpp"

namespace actstream {
namespace {

using testing::make_instance;

Dataset parse(const std::string& text, LoadOptions options = {}) {
  std::istringstream in(text);
  return parse_dataset(in, options);
}

TEST(FeatureVectorTest, RejectsUnsortedDuplicateAndOutOfRange) {
  EXPECT_THROW(FeatureVector(10, {3, 2}), std::invalid_argument);
  EXPECT_THROW(FeatureVector(10, {2, 2}), std::invalid_argument);
  EXPECT_THROW(FeatureVector(10, {10}), std::invalid_argument);
  EXPECT_THROW(FeatureVector(0, {}), std::invalid_argument);
}

TEST(FeatureVectorTest, SquaredNormIsActiveCount) {
  FeatureVector x(100, {3, 17, 90});
  EXPECT_EQ(x.squared_norm(), 3.0);
  EXPECT_EQ(x.squared_distance(FeatureVector(100, {3, 50})), 3u);
  EXPECT_EQ(x.project(std::vector<FeatureIndex>{17, 50, 90}).active().size(), 2u);
}

TEST(LoadDatasetTest, SingleRecord) {
  Dataset ds = parse("#dim=100,delay=40\n#epoch=2020-01-01\na1,5,45,1,3:17:90\n");
  ASSERT_EQ(ds.days.size(), 1u);
  EXPECT_EQ(ds.days[0].day, 5);
  const Instance& inst = ds.days[0].releases.at(0);
  EXPECT_EQ(inst.label, Label::malware);
  EXPECT_EQ(inst.label_day, 45);
  EXPECT_EQ(std::vector<FeatureIndex>(inst.features.active().begin(), inst.features.active().end()),
            (std::vector<FeatureIndex>{3, 17, 90}));
  EXPECT_EQ(ds.meta.dim, 100u);
  EXPECT_EQ(ds.meta.delay_estimate, 40);
  EXPECT_EQ(ds.meta.epoch, "2020-01-01");
  EXPECT_EQ(ds.meta.n_malware, 1u);
}

TEST(LoadDatasetTest, EmptyBody) {
  Dataset ds = parse("#dim=10,delay=40\n#epoch=synthetic\n");
  EXPECT_TRUE(ds.days.empty());
  EXPECT_EQ(ds.meta.n_benign, 0u);
  EXPECT_EQ(ds.meta.n_malware, 0u);
}

TEST(LoadDatasetTest, DaysSortedAndGapsKept) {
  Dataset ds = parse("#dim=10,delay=0\n#epoch=synthetic\nb,7,7,0,1\na,3,3,1,-\n");
  ASSERT_EQ(ds.days.size(), 2u);
  EXPECT_EQ(ds.days[0].day, 3);
  EXPECT_EQ(ds.days[1].day, 7);
  EXPECT_EQ(ds.days[0].releases[0].features.nnz(), 0u);
  EXPECT_EQ(ds.meta.first_day, 3);
  EXPECT_EQ(ds.meta.last_day, 7);
}

TEST(LoadDatasetTest, WithinDayOrderIsById) {
  Dataset ds = parse("#dim=10,delay=0\n#epoch=synthetic\nz,1,1,0,-\nm,1,1,1,-\na,1,1,0,-\n");
  ASSERT_EQ(ds.days.size(), 1u);
  EXPECT_EQ(ds.days[0].releases[0].id, "a");
  EXPECT_EQ(ds.days[0].releases[2].id, "z");
}

TEST(LoadDatasetTest, ErrorsReportLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse(text);
    } catch (const DatasetError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("#dim=10,delay=0\n#epoch=x\na,1,1,0,1\nb,1,1,0\n"), 4u);
  EXPECT_EQ(line_of("#dim=10,delay=0\n#epoch=x\na,1,1,0,10\n"), 3u);      // index >= dim
  EXPECT_EQ(line_of("#dim=10,delay=0\n#epoch=x\na,5,4,0,1\n"), 3u);       // label_day < release_day
  EXPECT_EQ(line_of("#dim=10,delay=0\n#epoch=x\na,1,1,2,1\n"), 3u);       // label
  EXPECT_EQ(line_of("#dim=10,delay=0\n#epoch=x\na,1,1,0,4:2\n"), 3u);     // not ascending
  EXPECT_EQ(line_of("#dim=10,delay=0\n#epoch=x\na,1,1,0,1\na,2,2,0,1\n"), 4u);  // duplicate id
  EXPECT_EQ(line_of("#dimension=10\n#epoch=x\n"), 1u);
  EXPECT_THROW(load_dataset("/nonexistent/actstream.txt"), DatasetError);
}

TEST(LoadDatasetTest, MalwareReleaseEstimation) {
  Dataset ds = parse("#dim=10,delay=40\n#epoch=x\nm,100,100,1,1\nb,90,130,0,1\n", LoadOptions{true});
  ASSERT_EQ(ds.days.size(), 2u);
  EXPECT_EQ(ds.days[0].day, 60);  // malware moved to 100 - 40
  EXPECT_EQ(ds.days[1].day, 90);  // benign untouched
}

TEST(EstimateReleaseDayTest, Examples) {
  EXPECT_EQ(estimate_release_day(100, 40), 60);
  EXPECT_EQ(estimate_release_day(5, 40), 0);
  EXPECT_EQ(estimate_release_day(40, 0), 40);
  EXPECT_THROW(estimate_release_day(40, -1), std::invalid_argument);
}

Dataset three_day_fixture() {
  std::vector<Instance> v;
  for (int d = 0; d < 3; ++d) {
    for (int i = 0; i < 2; ++i) {
      v.push_back(make_instance("d" + std::to_string(d) + "i" + std::to_string(i), 4, {0}, Label::benign, d, d + 9));
    }
  }
  return make_dataset(4, 40, "synthetic", std::move(v));
}

TEST(SplitSeedTest, ThreeDayFixture) {
  Dataset ds = three_day_fixture();
  SeedSplit split = split_seed(ds.days, 2);
  EXPECT_EQ(split.seed.size(), 4u);
  ASSERT_EQ(split.rest.size(), 1u);
  EXPECT_EQ(split.rest[0].day, 2);
}

TEST(SplitSeedTest, SeedEndBeforeFirstDayIsEmpty) {
  Dataset ds = three_day_fixture();
  SeedSplit split = split_seed(ds.days, 0);
  EXPECT_TRUE(split.seed.empty());
  EXPECT_EQ(split.rest, ds.days);
}

// Random datasets: write/load round-trips, and split_seed partitions for every cut.
TEST(DatasetPropertyTest, RoundTripAndPartition) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<int> day(0, 30);
    std::uniform_int_distribution<int> delay(0, 10);
    std::vector<Instance> v;
    int n = std::uniform_int_distribution<int>(0, 60)(rng);
    for (int i = 0; i < n; ++i) {
      int r = day(rng);
      v.push_back(Instance{"id" + std::to_string(i), testing::random_vector(rng, 50, 0.1),
                           std::bernoulli_distribution(0.5)(rng) ? Label::malware : Label::benign, r,
                           r + delay(rng)});
    }
    Dataset ds = make_dataset(50, 5, "synthetic", v);
    std::stringstream buf;
    write_dataset(buf, ds);
    Dataset back = parse_dataset(buf);
    ASSERT_EQ(back, ds);

    for (const auto& d : back.days) {
      for (const auto& inst : d.releases) EXPECT_GE(inst.label_day, inst.release_day);
    }

    int cut = day(rng);
    SeedSplit split = split_seed(ds.days, cut);
    std::size_t rest = 0;
    for (const auto& d : split.rest) {
      EXPECT_GE(d.day, cut);
      rest += d.releases.size();
    }
    for (const auto& s : split.seed) EXPECT_LT(s.release_day, cut);
    EXPECT_EQ(split.seed.size() + rest, ds.instance_count());
  }
}

}  // namespace
}  // namespace actstream
