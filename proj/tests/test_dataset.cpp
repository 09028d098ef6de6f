#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <unistd.h>

#include <doctest.h>

#include "fpnn/dataset.hpp"
#include "fpnn/errors.hpp"
#include "fpnn/frechet.hpp"
#include "fpnn/rng.hpp"

using namespace fpnn;
using namespace fpnn::data;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("fpnn_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path file(const std::string& name) const { return path / name; }
  static inline int counter = 0;
};

void write_file(const fs::path& p, const std::string& contents) {
  std::ofstream out(p, std::ios::binary);
  out << contents;
}

}  // namespace

TEST_CASE("csv loading") {
  TempDir dir;
  SUBCASE("well-formed file") {
    write_file(dir.file("ok.csv"),
               "a,b,c,label\n1,2,3,0\n4,5,6,1\n7,8,9,0\n");
    const RawTable t = load_csv(dir.file("ok.csv"));
    CHECK(t.rows.size() == 3);
    CHECK(t.feature_count() == 3);
    CHECK(t.columns.size() == 4);
    CHECK(t.rows[1] == std::vector<double>{4, 5, 6});
    CHECK(t.labels == std::vector<int>{0, 1, 0});
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_csv(dir.file("absent.csv")), ValidationError);
  }
  SUBCASE("ragged row names the line") {
    write_file(dir.file("ragged.csv"), "a,b,label\n1,2,0\n1,0\n");
    CHECK_THROWS_WITH_AS(load_csv(dir.file("ragged.csv")),
                         doctest::Contains("line 3"), ValidationError);
  }
  SUBCASE("non-numeric cell") {
    write_file(dir.file("bad.csv"), "a,b,label\n1,zap,0\n");
    CHECK_THROWS_WITH_AS(load_csv(dir.file("bad.csv")),
                         doctest::Contains("non-numeric"), ValidationError);
  }
  SUBCASE("label outside {0,1}") {
    write_file(dir.file("label.csv"), "a,b,label\n1,2,2\n");
    CHECK_THROWS_WITH_AS(load_csv(dir.file("label.csv")),
                         doctest::Contains("label"), ValidationError);
  }
  SUBCASE("header only gives an empty table") {
    write_file(dir.file("empty.csv"), "a,b,label\n");
    const RawTable t = load_csv(dir.file("empty.csv"));
    CHECK(t.rows.empty());
    CHECK(to_samples(t).empty());
  }
  SUBCASE("crlf line endings are accepted") {
    write_file(dir.file("crlf.csv"), "a,b,label\r\n1,2,1\r\n");
    const RawTable t = load_csv(dir.file("crlf.csv"));
    CHECK(t.rows.size() == 1);
    CHECK(t.labels[0] == 1);
  }
}

TEST_CASE("rows become single-component samples in order") {
  RawTable t;
  t.columns = {"c1", "c2", "label"};
  t.rows = {{1.0, 2.0}, {3.0, 4.0}};
  t.labels = {0, 1};
  const auto samples = to_samples(t);
  REQUIRE(samples.size() == 2);
  CHECK(samples[0].input.component_count() == 1);
  CHECK(samples[0].input.length() == 2);
  CHECK(samples[0].input.component(0).values() == std::vector<double>{1, 2});
  CHECK(samples[0].target == 0.0);
  CHECK(samples[1].target == 1.0);

  RawTable wide;
  wide.columns.assign(15, "c");
  wide.rows = {std::vector<double>(14, 0.0)};
  wide.labels = {1};
  const auto eeg = to_samples(wide);
  CHECK(eeg[0].input.component_count() == 1);
  CHECK(eeg[0].input.length() == 14);
}

TEST_CASE("min-max normalization") {
  std::vector<LabeledSample> train{
      {FunctionVectorSample{Sequence{0.0, 5.0, 7.0}}, 0.0},
      {FunctionVectorSample{Sequence{10.0, 5.0, 3.0}}, 1.0},
      {FunctionVectorSample{Sequence{5.0, 5.0, 11.0}}, 0.0},
  };
  const auto stats = fit_normalization(train);
  CHECK(stats.min[0] == std::vector<double>{0.0, 5.0, 3.0});
  CHECK(stats.max[0] == std::vector<double>{10.0, 5.0, 11.0});

  SUBCASE("midpoint value maps to one half") {
    const auto x = apply_normalization(
        stats, FunctionVectorSample{Sequence{5.0, 5.0, 7.0}});
    CHECK(x.component(0)[0] == 0.5);
    CHECK(x.component(0)[1] == 0.5);  // degenerate position
    CHECK(x.component(0)[2] == 0.5);
  }
  SUBCASE("fitted training data spans [0,1] per position") {
    const auto scaled = apply_normalization(stats, train);
    for (std::size_t pos = 0; pos < 3; ++pos) {
      double lo = 1e9, hi = -1e9;
      for (const auto& s : scaled) {
        lo = std::min(lo, s.input.component(0)[pos]);
        hi = std::max(hi, s.input.component(0)[pos]);
      }
      if (pos == 1) {
        CHECK(lo == 0.5);  // constant position pins to the midpoint
        CHECK(hi == 0.5);
      } else {
        CHECK(lo == 0.0);
        CHECK(hi == 1.0);
      }
    }
  }
  SUBCASE("test values outside the range are not clipped") {
    const auto x = apply_normalization(
        stats, FunctionVectorSample{Sequence{-10.0, 5.0, 19.0}});
    CHECK(x.component(0)[0] == -1.0);
    CHECK(x.component(0)[2] == 2.0);
  }
  SUBCASE("empty training set is rejected") {
    CHECK_THROWS_AS(fit_normalization({}), ValidationError);
  }
  SUBCASE("shape mismatch is rejected") {
    CHECK_THROWS_AS(
        apply_normalization(stats, FunctionVectorSample{Sequence{1.0}}),
        ValidationError);
  }
}

TEST_CASE("stratified split") {
  // Unique first values let us track identity across the split.
  std::vector<LabeledSample> samples;
  for (int i = 0; i < 80; ++i) {
    samples.push_back({FunctionVectorSample{Sequence{static_cast<double>(i),
                                                     0.0}},
                       i < 40 ? 0.0 : 1.0});
  }

  SUBCASE("balanced counts and disjointness") {
    SplitSpec spec{30, 10, 0};
    Rng rng(5);
    const auto [train, test] = stratified_split(samples, spec, rng);
    CHECK(train.size() == 60);
    CHECK(test.size() == 20);
    std::size_t train_c1 = 0;
    for (const auto& s : train) train_c1 += s.target == 1.0;
    CHECK(train_c1 == 30);

    std::set<double> train_ids, test_ids;
    for (const auto& s : train) train_ids.insert(s.input.component(0)[0]);
    for (const auto& s : test) test_ids.insert(s.input.component(0)[0]);
    CHECK(train_ids.size() == 60);
    for (double id : test_ids) CHECK(train_ids.count(id) == 0);
  }
  SUBCASE("same seed, same split") {
    SplitSpec spec{20, 20, 0};
    Rng a(9), b(9);
    const auto [train1, test1] = stratified_split(samples, spec, a);
    const auto [train2, test2] = stratified_split(samples, spec, b);
    REQUIRE(train1.size() == train2.size());
    for (std::size_t i = 0; i < train1.size(); ++i) {
      CHECK(train1[i].input == train2[i].input);
    }
    for (std::size_t i = 0; i < test1.size(); ++i) {
      CHECK(test1[i].input == test2[i].input);
    }
  }
  SUBCASE("shortfall reports the class") {
    SplitSpec spec{30, 30, 0};  // needs 60 per class, only 40 available
    Rng rng(1);
    CHECK_THROWS_WITH_AS(stratified_split(samples, spec, rng),
                         doctest::Contains("need 60"), ValidationError);
  }
}

TEST_CASE("synthetic generator") {
  SUBCASE("noiseless templates") {
    Rng rng(0);
    const auto samples = synth_generate(1, 3, 0.0, rng);
    REQUIRE(samples.size() == 2);
    CHECK(samples[1].target == 1.0);
    CHECK(samples[1].input.component(0).values() ==
          std::vector<double>{0.0, 0.5, 1.0});

    Rng rng5(0);
    const auto five = synth_generate(1, 5, 0.0, rng5);
    const auto& sine = five[0].input.component(0).values();
    CHECK(sine[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sine[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sine[2] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(sine[3] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(sine[4]) < 1e-12);
  }
  SUBCASE("deterministic for a fixed seed") {
    Rng a(42), b(42);
    const auto s1 = synth_generate(10, 8, 0.1, a);
    const auto s2 = synth_generate(10, 8, 0.1, b);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
      CHECK(s1[i].input == s2[i].input);
      CHECK(s1[i].target == s2[i].target);
    }
  }
  SUBCASE("class balance and labels") {
    Rng rng(3);
    const auto samples = synth_generate(30, 14, 0.05, rng);
    CHECK(samples.size() == 60);
    std::size_t ones = 0;
    for (const auto& s : samples) ones += s.target == 1.0;
    CHECK(ones == 30);
  }
  SUBCASE("templates of the two classes are separable without noise") {
    Rng rng(1);
    const auto samples = synth_generate(3, 14, 0.0, rng);
    double within = 0.0;
    double across = 1e9;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      for (std::size_t j = i + 1; j < samples.size(); ++j) {
        const double d =
            generalized_frechet(samples[i].input, samples[j].input);
        if (samples[i].target == samples[j].target) {
          within = std::max(within, d);
        } else {
          across = std::min(across, d);
        }
      }
    }
    CHECK(within == 0.0);
    CHECK(across > 0.0);
  }
  SUBCASE("parameter validation") {
    Rng rng(0);
    CHECK_THROWS_AS(synth_generate(0, 8, 0.1, rng), ValidationError);
    CHECK_THROWS_AS(synth_generate(5, 1, 0.1, rng), ValidationError);
    CHECK_THROWS_AS(synth_generate(5, 8, -0.1, rng), ValidationError);
  }
}

TEST_CASE("gene bounds derivation") {
  Rng rng(11);
  auto samples = synth_generate(20, 6, 0.05, rng);
  const auto stats = fit_normalization(samples);
  const auto normalized = apply_normalization(stats, samples);

  const NetworkShape shape{1, 3, 6};
  BoundsConfig cfg;
  cfg.sigma_min = 1e-3;
  const auto bounds = derive_gene_bounds(normalized, shape, cfg);
  CHECK(bounds.size() == shape.gene_count());

  // Normalized data spans [0,1], so every center gene does too.
  const std::size_t center_genes = shape.hidden * shape.components * shape.length;
  for (std::size_t g = 0; g < center_genes; ++g) {
    CHECK(bounds.lower(g) == 0.0);
    CHECK(bounds.upper(g) == 1.0);
  }
  for (std::size_t g = center_genes; g < center_genes + shape.hidden; ++g) {
    CHECK(bounds.lower(g) == cfg.sigma_min);
    CHECK(bounds.upper(g) > cfg.sigma_min);
  }
  for (std::size_t g = center_genes + shape.hidden; g < bounds.size(); ++g) {
    CHECK(bounds.lower(g) == -cfg.weight_limit);
    CHECK(bounds.upper(g) == cfg.weight_limit);
  }

  // The width cap is the largest pairwise distance over the subsample.
  double d_max = 0.0;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    for (std::size_t j = i + 1; j < normalized.size(); ++j) {
      d_max = std::max(d_max, generalized_frechet(normalized[i].input,
                                                  normalized[j].input));
    }
  }
  CHECK(bounds.upper(center_genes) == d_max);

  CHECK_THROWS_AS(derive_gene_bounds({}, shape, cfg), ValidationError);
}

TEST_CASE("csv round trip preserves values and bytes") {
  TempDir dir;
  Rng rng(8);
  const auto samples = synth_generate(5, 7, 0.2, rng);
  write_csv(dir.file("out.csv"), samples);
  const auto back = to_samples(load_csv(dir.file("out.csv")));
  REQUIRE(back.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(back[i].input == samples[i].input);  // full-precision round trip
    CHECK(back[i].target == samples[i].target);
  }

  write_csv(dir.file("again.csv"), samples);
  std::ifstream f1(dir.file("out.csv"), std::ios::binary);
  std::ifstream f2(dir.file("again.csv"), std::ios::binary);
  const std::string b1((std::istreambuf_iterator<char>(f1)), {});
  const std::string b2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(b1 == b2);
  CHECK(b1.substr(0, b1.find('\n')) == "x1,x2,x3,x4,x5,x6,x7,label");
}
