#include <cmath>
#include <limits>

#include "credal/metrics.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace credal;

namespace {

ProbabilityVector pv(std::vector<double> v) { return ProbabilityVector::validated(std::move(v)); }

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected credal::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("auroc examples") {
  CHECK(auroc(std::vector<double>{1, 2}, std::vector<double>{3, 4}) == 1.0);
  CHECK(auroc(std::vector<double>{1, 2, 2}, std::vector<double>{2, 1, 2}) == 0.5);
  CHECK(auroc(std::vector<double>{0.1, 0.4}, std::vector<double>{0.3, 0.9}) == 0.75);
}

TEST_CASE("auprc examples") {
  CHECK(auprc(std::vector<double>{1, 2}, std::vector<double>{3, 4}) == 1.0);
  CHECK(std::abs(auprc(std::vector<double>{0.1, 0.4}, std::vector<double>{0.3, 0.9}) - 5.0 / 6.0) <=
        1e-12);
  CHECK(auprc(std::vector<double>{0.5, 0.5, 0.5}, std::vector<double>{0.5, 0.5, 0.5}) == 0.5);
}

TEST_CASE("detection input errors") {
  const std::vector<double> empty, one{1.0};
  const std::vector<double> nan{std::numeric_limits<double>::quiet_NaN()};
  CHECK(code_of([&] { auroc(empty, one); }) == ErrorCode::EmptyInput);
  CHECK(code_of([&] { auprc(one, empty); }) == ErrorCode::EmptyInput);
  CHECK(code_of([&] { auroc(nan, one); }) == ErrorCode::NonFiniteScore);
  const auto r = detection_report(std::vector<double>{0.1, 0.4}, std::vector<double>{0.3, 0.9, 1.0});
  CHECK(r.n_id == 2);
  CHECK(r.n_ood == 3);
}

TEST_CASE("auroc properties on tied random inputs") {
  oracle::Rng rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t levels = oracle::uniform_int(rng, 1, 6);
    std::vector<double> id(oracle::uniform_int(rng, 1, 30)), ood(oracle::uniform_int(rng, 1, 30));
    for (auto& v : id) v = static_cast<double>(oracle::uniform_int(rng, 0, levels)) / 4.0;
    for (auto& v : ood) v = static_cast<double>(oracle::uniform_int(rng, 0, levels)) / 4.0;
    const double a = auroc(id, ood);
    CHECK(a == oracle::auroc_pairs(id, ood));
    CHECK(a + auroc(ood, id) == doctest::Approx(1.0).epsilon(1e-14));
    std::vector<double> id_t = id, ood_t = ood;
    for (auto& v : id_t) v = std::exp(3.0 * v) - 7.0;
    for (auto& v : ood_t) v = std::exp(3.0 * v) - 7.0;
    CHECK(auroc(id_t, ood_t) == a);
    CHECK(std::abs(auprc(id, ood) - oracle::average_precision(id, ood)) <= 1e-12);
  }
}

TEST_CASE("ece examples") {
  const std::vector<ProbabilityVector> onehot{pv({1.0, 0.0}), pv({0.0, 1.0})};
  const std::vector<std::size_t> onehot_labels{0, 1};
  CHECK(ece(onehot, onehot_labels) == 0.0);

  const std::vector<ProbabilityVector> two{pv({0.8, 0.2}), pv({0.8, 0.2})};
  const std::vector<std::size_t> two_labels{0, 1};
  CHECK(ece(two, two_labels) == std::abs(0.5 - 0.8));

  const std::vector<ProbabilityVector> single{pv({0.35, 0.65})};
  const std::vector<std::size_t> single_label{1};
  CHECK(ece(single, single_label) == doctest::Approx(1.0 - 0.65));
}

TEST_CASE("ece with one sample per bin is the mean gap") {
  // confidences 0.55, 0.75, 0.95 fall in different bins with G=10
  const std::vector<ProbabilityVector> preds{pv({0.55, 0.45}), pv({0.25, 0.75}), pv({0.95, 0.05})};
  const std::vector<std::size_t> labels{0, 0, 0};
  const double expect = (std::abs(1.0 - 0.55) + std::abs(0.0 - 0.75) + std::abs(1.0 - 0.95)) / 3.0;
  CHECK(ece(preds, labels, 10) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(code_of([&] { ece(preds, labels, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("nll and accuracy examples") {
  const std::vector<ProbabilityVector> sure{pv({1.0, 0.0})};
  const std::vector<std::size_t> zero{0};
  CHECK(nll(sure, zero) == 0.0);
  const std::vector<ProbabilityVector> half{pv({0.5, 0.5})};
  CHECK(std::abs(nll(half, zero) - std::log(2.0)) <= 1e-12);
  const std::vector<std::size_t> one{1};
  CHECK(nll(sure, one) == doctest::Approx(-std::log(1e-12)));
  CHECK(nll(std::vector<ProbabilityVector>{pv({0.3, 0.7})}, zero) >
        nll(std::vector<ProbabilityVector>{pv({0.4, 0.6})}, zero));

  const std::vector<ProbabilityVector> preds{pv({0.6, 0.4}), pv({0.3, 0.7})};
  CHECK(accuracy(preds, std::vector<std::size_t>{0, 0}) == 0.5);
  CHECK(accuracy(preds, std::vector<std::size_t>{0, 1}) == 1.0);
  CHECK(accuracy(preds, std::vector<std::size_t>{1, 0}) == 0.0);

  CHECK(code_of([&] { nll(preds, zero); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([&] { accuracy(preds, std::vector<std::size_t>{0, 2}); }) ==
        ErrorCode::LabelOutOfRange);

  const auto r = calibration_report(preds, std::vector<std::size_t>{0, 1});
  CHECK(r.accuracy == 1.0);
  CHECK(r.bins == kDefaultEceBins);
}
