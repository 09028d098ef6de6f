#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "fpnn/errors.hpp"
#include "fpnn/frechet.hpp"
#include "fpnn/rbf_network.hpp"
#include "fpnn/rng.hpp"

using namespace fpnn;

namespace {

FunctionVectorSample constant_sample(std::size_t n, std::size_t len, double v) {
  std::vector<Sequence> components;
  for (std::size_t i = 0; i < n; ++i) {
    components.emplace_back(std::vector<double>(len, v));
  }
  return FunctionVectorSample(std::move(components));
}

NetworkParams random_params(const NetworkShape& shape, Rng& rng) {
  NetworkParams p;
  for (std::size_t j = 0; j < shape.hidden; ++j) {
    std::vector<Sequence> components;
    for (std::size_t i = 0; i < shape.components; ++i) {
      std::vector<double> v(shape.length);
      for (double& x : v) x = rng.uniform(0.0, 1.0);
      components.emplace_back(std::move(v));
    }
    p.centers.emplace_back(std::move(components));
    p.sigmas.push_back(rng.uniform(0.05, 1.0));
    p.weights.push_back(rng.uniform(-2.0, 2.0));
  }
  return p;
}

FunctionVectorSample random_input(const NetworkShape& shape, Rng& rng) {
  std::vector<Sequence> components;
  for (std::size_t i = 0; i < shape.components; ++i) {
    std::vector<double> v(shape.length);
    for (double& x : v) x = rng.uniform(0.0, 1.0);
    components.emplace_back(std::move(v));
  }
  return FunctionVectorSample(std::move(components));
}

}  // namespace

TEST_CASE("shape gene count") {
  CHECK(NetworkShape{1, 8, 14}.gene_count() == 128);
  CHECK(NetworkShape{2, 1, 3}.gene_count() == 8);
  CHECK_THROWS_AS((NetworkShape{0, 1, 1}.validate()), ValidationError);
}

TEST_CASE("neuron activation values") {
  const auto x = constant_sample(1, 4, 0.0);
  SUBCASE("zero distance gives one") {
    CHECK(neuron_activation(x, x, 0.7) == 1.0);
  }
  SUBCASE("distance equal to sigma") {
    const auto center = constant_sample(1, 4, 0.3);  // d = 0.3
    CHECK(neuron_activation(x, center, 0.3) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-13));
  }
  SUBCASE("distance twice sigma") {
    const auto center = constant_sample(1, 4, 0.6);  // d = 0.6
    CHECK(neuron_activation(x, center, 0.3) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
  }
  SUBCASE("width below floor is rejected") {
    CHECK_THROWS_AS(neuron_activation(x, x, 1e-4), ValidationError);
  }
  SUBCASE("component mismatch is rejected") {
    CHECK_THROWS_AS(neuron_activation(x, constant_sample(2, 4, 0.0), 0.5),
                    ValidationError);
  }
}

TEST_CASE("activation stays in (0, 1] and hits 1 only at distance zero") {
  Rng rng(5);
  const NetworkShape shape{2, 1, 6};
  for (int t = 0; t < 200; ++t) {
    const auto x = random_input(shape, rng);
    const auto c = random_input(shape, rng);
    const double sigma = rng.uniform(0.05, 2.0);
    const double a = neuron_activation(x, c, sigma);
    CHECK(a > 0.0);
    CHECK(a <= 1.0);
    if (a == 1.0) CHECK(generalized_frechet(x, c) == 0.0);
  }
}

TEST_CASE("forward weighted sum") {
  const auto x = constant_sample(1, 3, 0.5);
  SUBCASE("single unit weight") {
    NetworkParams p{{x}, {0.5}, {1.0}};
    CHECK(forward(p, x) == 1.0);
  }
  SUBCASE("symmetric cancellation") {
    NetworkParams p{{x, x}, {0.4, 0.4}, {1.0, -1.0}};
    CHECK(forward(p, x) == 0.0);
  }
  SUBCASE("weighted activations") {
    // Centers at distances giving activations 0.5 and 0.1 for sigma chosen
    // from d = sigma*sqrt(2 ln(1/a)).
    const double d1 = std::sqrt(2.0 * std::log(2.0));        // a = 0.5, sigma 1
    const double d2 = std::sqrt(2.0 * std::log(10.0));       // a = 0.1, sigma 1
    NetworkParams p{{constant_sample(1, 3, 0.5 + d1),
                     constant_sample(1, 3, 0.5 + d2)},
                    {1.0, 1.0},
                    {2.0, 3.0}};
    CHECK(forward(p, x) == doctest::Approx(2.0 * 0.5 + 3.0 * 0.1).epsilon(1e-12));
  }
}

TEST_CASE("forward is exactly linear in the weights") {
  Rng rng(77);
  const NetworkShape shape{1, 4, 8};
  for (int t = 0; t < 100; ++t) {
    NetworkParams p = random_params(shape, rng);
    const auto x = random_input(shape, rng);
    const double y = forward(p, x);
    NetworkParams doubled = p;
    for (double& w : doubled.weights) w *= 2.0;
    CHECK(forward(doubled, x) == 2.0 * y);  // power-of-two scaling is exact
  }
}

TEST_CASE("objective values and properties") {
  const auto x = constant_sample(1, 3, 0.2);
  NetworkParams p{{x}, {0.5}, {1.0}};  // forward(x) == 1 for input x

  SUBCASE("zero residual") {
    std::vector<LabeledSample> s{{x, 1.0}};
    CHECK(objective(p, s) == 0.0);
  }
  SUBCASE("frozen residuals") {
    // y == 1 on both samples; targets 0 and -1 give residuals 1 and 2.
    std::vector<LabeledSample> s{{x, 0.0}, {x, -1.0}};
    CHECK(objective(p, s) == 5.0);
  }
  SUBCASE("half residual") {
    NetworkParams half{{x}, {0.5}, {0.5}};
    std::vector<LabeledSample> s{{x, 1.0}};
    CHECK(objective(half, s) == 0.25);
  }
  SUBCASE("empty sample list is rejected") {
    CHECK_THROWS_AS(objective(p, {}), ValidationError);
  }
}

TEST_CASE("objective decomposes over concatenation and ignores order") {
  Rng rng(13);
  const NetworkShape shape{1, 3, 6};
  for (int t = 0; t < 50; ++t) {
    NetworkParams p = random_params(shape, rng);
    std::vector<LabeledSample> a, b;
    for (int k = 0; k < 4; ++k) {
      a.push_back({random_input(shape, rng), k % 2 ? 1.0 : 0.0});
      b.push_back({random_input(shape, rng), k % 2 ? 0.0 : 1.0});
    }
    std::vector<LabeledSample> both = a;
    both.insert(both.end(), b.begin(), b.end());
    CHECK(objective(p, both) ==
          doctest::Approx(objective(p, a) + objective(p, b)).epsilon(1e-12));

    std::vector<LabeledSample> reversed(both.rbegin(), both.rend());
    CHECK(objective(p, reversed) ==
          doctest::Approx(objective(p, both)).epsilon(1e-12));
  }
}

TEST_CASE("fitness map") {
  CHECK(fitness(0.0) == 1.0);
  CHECK(fitness(1.0) == 0.5);
  CHECK(fitness(3.0) == 0.25);
  CHECK_THROWS_AS(fitness(-0.1), ValidationError);
  CHECK_THROWS_AS(fitness(std::numeric_limits<double>::infinity()),
                  ValidationError);

  // Order-reversing: smaller error always means larger fitness.
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const double e1 = rng.uniform(0.0, 50.0);
    const double e2 = rng.uniform(0.0, 50.0);
    if (e1 < e2) CHECK(fitness(e1) > fitness(e2));
  }
}

TEST_CASE("classification threshold") {
  CHECK(classify(0.9, 0.5) == 1);
  CHECK(classify(0.1, 0.5) == 0);
  CHECK(classify(0.5, 0.5) == 1);  // boundary goes to class 1
  CHECK(classify(-3.0) == 0);
  CHECK_THROWS_AS(classify(0.5, std::nan("")), ValidationError);
}

TEST_CASE("codec layout and round trip") {
  const NetworkShape shape{2, 2, 3};
  NetworkParams p;
  p.centers = {FunctionVectorSample{Sequence{1, 2, 3}, Sequence{4, 5, 6}},
               FunctionVectorSample{Sequence{7, 8, 9}, Sequence{10, 11, 12}}};
  p.sigmas = {0.5, 0.25};
  p.weights = {-1.0, 1.5};

  const auto genes = encode(p);
  REQUIRE(genes.size() == shape.gene_count());
  // Centers ordered (node, component, sample point), then sigmas, weights.
  const std::vector<double> expected{1, 2,    3,    4,   5,   6,  7, 8,
                                     9, 10,   11,   12,  0.5, 0.25, -1.0, 1.5};
  CHECK(genes == expected);

  const NetworkParams back = decode(genes, shape);
  CHECK(back == p);
}

TEST_CASE("codec round trip on random parameters") {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const NetworkShape shape{1 + rng.uniform_index(3), 1 + rng.uniform_index(4),
                             1 + rng.uniform_index(6)};
    const NetworkParams p = random_params(shape, rng);
    CHECK(decode(encode(p), shape) == p);
  }
}

TEST_CASE("decode clamps widths up to the floor") {
  const NetworkShape shape{1, 1, 2};
  std::vector<double> genes{0.1, 0.2, 1e-9, 1.0};
  const NetworkParams p = decode(genes, shape, 1e-3);
  CHECK(p.sigmas[0] == 1e-3);
}

TEST_CASE("decode rejects wrong lengths") {
  CHECK_THROWS_AS(decode({1.0, 2.0}, NetworkShape{1, 1, 2}), ValidationError);
  CHECK_NOTHROW(decode({1.0, 2.0, 0.5, 0.5}, NetworkShape{1, 1, 2}));
}
