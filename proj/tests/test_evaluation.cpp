#include "sdcil/error.hpp"
#include "sdcil/evaluation.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace sdcil;

namespace {

LabeledDataset iris() { return load_csv(std::filesystem::path(SDCIL_DATA_DIR) / "iris.csv"); }

EvalOptions quick() {
    EvalOptions o;
    o.trials = 3;
    o.cil.cv.width_count = 8;
    o.batch_cv.width_count = 8;
    return o;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("method names round trip") {
    for (auto m : {Method::sdcil, Method::knn, Method::ocsvm_nn, Method::batch_svm}) {
        CHECK(parse_method(method_name(m)) == m);
    }
    CHECK(method_name(Method::ocsvm_nn) == "ocsvm-nn");
    CHECK_FALSE(parse_method("svm").has_value());
}

TEST_CASE("report statistics use the sample deviation") {
    EvalReport r;
    for (double a : {0.9, 0.8, 1.0}) {
        TrialResult t;
        t.accuracy = a;
        r.trials.push_back(t);
    }
    r.recompute();
    CHECK(r.mean_accuracy == doctest::Approx(0.9));
    CHECK(r.std_accuracy == doctest::Approx(0.1));
    r.trials.resize(1);
    r.recompute();
    CHECK(r.std_accuracy == 0.0);
}

TEST_CASE("reported table and benchmark nu") {
    const auto p = reported_result("pima", Method::sdcil);
    REQUIRE(p.has_value());
    CHECK(p->mean_percent == 74.43);
    CHECK(reported_result("waveform", Method::ocsvm_nn)->mean_percent == 74.77);
    CHECK(reported_result("iris", Method::batch_svm)->std_as_printed == 2.147);
    CHECK_FALSE(reported_result("mnist", Method::sdcil).has_value());
    CHECK(benchmark_nu("pima") == 0.3);
    CHECK(benchmark_nu("seeds") == 0.3);
    CHECK(benchmark_nu("iris") == 0.2);
    CHECK(benchmark_nu("waveform") == 0.2);
}

TEST_CASE("evaluation is deterministic and self-consistent") {
    const auto data = make_toy(ToyShape::blobs, 30, 4);
    const auto opts = quick();
    const std::vector<Method> methods{Method::sdcil, Method::ocsvm_nn, Method::knn};
    const auto a = evaluate(data, "blobs", methods, opts);
    const auto b = evaluate(data, "blobs", methods, opts);
    REQUIRE(a.size() == 3);
    for (std::size_t m = 0; m < a.size(); ++m) {
        REQUIRE(a[m].trials.size() == 3);
        CHECK(a[m].method == methods[m]);
        CHECK(a[m].dataset == "blobs");
        for (std::size_t t = 0; t < 3; ++t) {
            CHECK(a[m].trials[t].accuracy == b[m].trials[t].accuracy);
            CHECK(a[m].trials[t].seed == t);
            CHECK(a[m].trials[t].accuracy >= 0.0);
            CHECK(a[m].trials[t].accuracy <= 1.0);
            CHECK(a[m].trials[t].train_size == 63);
            CHECK(a[m].trials[t].test_size == 27);
        }
        auto copy = a[m];
        copy.recompute();
        CHECK(std::abs(copy.mean_accuracy - a[m].mean_accuracy) <= 1e-12);
        CHECK(std::abs(copy.std_accuracy - a[m].std_accuracy) <= 1e-12);
    }
    const auto &t0 = a[0].trials[0];
    CHECK(t0.unique_pos + t0.multi_pos + t0.none_pos == t0.test_size);
    CHECK(t0.add_class_seconds.size() == 3);
    CHECK_THROWS_AS([&] {
        auto o = opts;
        o.trials = 0;
        (void)evaluate(data, "blobs", methods, o);
    }(), DataError);
}

TEST_CASE("trials csv") {
    EvalReport r;
    r.dataset = "iris";
    r.method = Method::knn;
    TrialResult t;
    t.seed = 7;
    t.accuracy = 0.5;
    t.unique_pos = 1;
    r.trials.push_back(t);
    std::ostringstream out;
    write_trials_csv(out, {r});
    CHECK(out.str() == "method,dataset,trial,seed,accuracy,unique_pos,multi_pos,none_pos,train_seconds\n"
                       "knn,iris,0,7,0.5,1,0,0,0\n");
}

TEST_CASE("train_registry follows the requested order") {
    const auto data = make_toy(ToyShape::blobs, 25, 5);
    CilConfig cfg;
    cfg.cv.width_count = 6;
    std::vector<AddClassReport> reports;
    const auto m = train_registry(data, cfg, {2, 0, 1}, &reports);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].label == 2);
    CHECK(m.classes()[0].label == 2);
    CHECK(m.pairs().size() == 3);
    CHECK(reports[2].new_pairs == 2);
}

TEST_CASE("iris: nearest neighbour and batch baselines") {
    EvalOptions o;
    o.trials = 10;
    const auto reps = evaluate(iris(), "iris", {Method::knn, Method::batch_svm}, o);
    CHECK(std::abs(100.0 * reps[0].mean_accuracy - 95.78) <= 3.0);
    CHECK(std::abs(100.0 * reps[1].mean_accuracy - 96.89) <= 3.0);
}

}
