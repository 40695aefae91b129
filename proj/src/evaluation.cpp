#include "sdcil/evaluation.hpp"

#include "sdcil/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>

namespace sdcil {

std::string_view method_name(Method m) {
    switch (m) {
    case Method::sdcil:
        return "sdcil";
    case Method::knn:
        return "knn";
    case Method::ocsvm_nn:
        return "ocsvm-nn";
    case Method::batch_svm:
        return "batch-svm";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (auto m : {Method::sdcil, Method::knn, Method::ocsvm_nn, Method::batch_svm}) {
        if (method_name(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

void EvalReport::recompute() {
    const double n = static_cast<double>(trials.size());
    if (trials.empty()) {
        mean_accuracy = 0.0;
        std_accuracy = 0.0;
        return;
    }
    double sum = 0.0;
    for (const auto &t : trials) {
        sum += t.accuracy;
    }
    mean_accuracy = sum / n;
    double ss = 0.0;
    for (const auto &t : trials) {
        ss += (t.accuracy - mean_accuracy) * (t.accuracy - mean_accuracy);
    }
    std_accuracy = trials.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
}

CilModel train_registry(const LabeledDataset &train, const CilConfig &config, const std::vector<Label> &order,
                        std::vector<AddClassReport> *reports) {
    const auto fitted = fit_standardize(train);
    CilModel model(config, fitted.scaler);
    const auto &labels = order.empty() ? train.class_ids() : order;
    for (Label l : labels) {
        auto rep = model.add_class(l, train.class_rows(l), std::nullopt, train.name_of(l));
        if (reports != nullptr) {
            reports->push_back(std::move(rep));
        }
    }
    return model;
}

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

std::vector<EvalReport> evaluate(const LabeledDataset &data, const std::string &dataset_name,
                                 const std::vector<Method> &methods, const EvalOptions &options) {
    if (options.trials == 0) {
        throw DataError("evaluation needs at least one trial");
    }
    std::vector<EvalReport> reports(methods.size());
    for (std::size_t m = 0; m < methods.size(); ++m) {
        reports[m].dataset = dataset_name;
        reports[m].method = methods[m];
    }
    const bool needs_registry = std::any_of(methods.begin(), methods.end(), [](Method m) {
        return m == Method::sdcil || m == Method::ocsvm_nn;
    });

    for (std::size_t trial = 0; trial < options.trials; ++trial) {
        const std::uint64_t seed = options.seed + trial;
        const auto [train, test] = stratified_split(data, {options.train_fraction, seed, true});

        std::optional<CilModel> registry;
        std::vector<AddClassReport> adds;
        double registry_seconds = 0.0;
        if (needs_registry) {
            const auto t0 = clock_type::now();
            registry = train_registry(train, options.cil, {}, &adds);
            registry_seconds = seconds_since(t0);
        }

        for (std::size_t m = 0; m < methods.size(); ++m) {
            TrialResult tr;
            tr.seed = seed;
            tr.train_size = train.size();
            tr.test_size = test.size();
            std::size_t hits = 0;
            const auto &tx = test.features();

            switch (methods[m]) {
            case Method::sdcil:
            case Method::ocsvm_nn: {
                tr.train_seconds = registry_seconds;
                for (const auto &a : adds) {
                    tr.add_class_seconds.push_back(a.seconds);
                }
                for (std::size_t i = 0; i < test.size(); ++i) {
                    Label pred;
                    if (methods[m] == Method::sdcil) {
                        const auto det = registry->predict_detail(tx.row(i));
                        pred = det.label;
                        switch (det.region) {
                        case Region::unique_positive:
                            ++tr.unique_pos;
                            break;
                        case Region::multi_positive:
                            ++tr.multi_pos;
                            break;
                        case Region::none_positive:
                            ++tr.none_pos;
                            break;
                        }
                    } else {
                        pred = registry->ocsvm_nn_predict(tx.row(i));
                    }
                    hits += pred == test.labels()[i] ? 1 : 0;
                }
                break;
            }
            case Method::knn: {
                const auto t0 = clock_type::now();
                const auto fitted = fit_standardize(train);
                tr.train_seconds = seconds_since(t0);
                for (std::size_t i = 0; i < test.size(); ++i) {
                    const auto z = fitted.scaler.apply(tx.row(i));
                    hits += knn_predict(fitted.data, z, options.knn_k) == test.labels()[i] ? 1 : 0;
                }
                break;
            }
            case Method::batch_svm: {
                const auto t0 = clock_type::now();
                const auto fitted = fit_standardize(train);
                const BatchOneVsOne svm(fitted.data, options.batch_cv, options.cil.solver);
                tr.train_seconds = seconds_since(t0);
                for (std::size_t i = 0; i < test.size(); ++i) {
                    const auto z = fitted.scaler.apply(tx.row(i));
                    hits += svm.predict(z) == test.labels()[i] ? 1 : 0;
                }
                break;
            }
            }
            tr.accuracy = static_cast<double>(hits) / static_cast<double>(test.size());
            reports[m].trials.push_back(std::move(tr));
        }
    }
    for (auto &r : reports) {
        r.recompute();
    }
    return reports;
}

void write_trials_csv(std::ostream &out, const std::vector<EvalReport> &reports, bool header) {
    if (header) {
        out << "method,dataset,trial,seed,accuracy,unique_pos,multi_pos,none_pos,train_seconds\n";
    }
    const auto old = out.precision(17);
    for (const auto &r : reports) {
        for (std::size_t t = 0; t < r.trials.size(); ++t) {
            const auto &tr = r.trials[t];
            out << method_name(r.method) << ',' << r.dataset << ',' << t << ',' << tr.seed << ',' << tr.accuracy
                << ',' << tr.unique_pos << ',' << tr.multi_pos << ',' << tr.none_pos << ',' << tr.train_seconds
                << '\n';
        }
    }
    out.precision(old);
}

std::optional<ReportedResult> reported_result(std::string_view dataset, Method method) {
    // SD-CIL, SVM, 1NN, OCSVM-1NN columns.
    static const std::map<std::string, std::map<Method, ReportedResult>, std::less<>> table = {
        {"iris",
         {{Method::sdcil, {95.78, 0.029}},
          {Method::batch_svm, {96.89, 2.147}},
          {Method::knn, {95.78, 0.024}},
          {Method::ocsvm_nn, {94.22, 0.038}}}},
        {"seeds",
         {{Method::sdcil, {92.06, 0.021}},
          {Method::batch_svm, {90.00, 3.819}},
          {Method::knn, {90.16, 0.038}},
          {Method::ocsvm_nn, {91.59, 0.022}}}},
        {"pima",
         {{Method::sdcil, {74.43, 0.027}},
          {Method::batch_svm, {77.43, 1.861}},
          {Method::knn, {73.91, 0.026}},
          {Method::ocsvm_nn, {66.65, 0.035}}}},
        {"waveform",
         {{Method::sdcil, {85.26, 0.006}},
          {Method::batch_svm, {86.75, 0.532}},
          {Method::knn, {82.65, 0.008}},
          {Method::ocsvm_nn, {74.77, 0.012}}}},
        {"transfusion",
         {{Method::sdcil, {76.34, 0.023}},
          {Method::batch_svm, {77.72, 0.879}},
          {Method::knn, {77.86, 0.018}},
          {Method::ocsvm_nn, {69.42, 0.032}}}},
    };
    const auto it = table.find(dataset);
    if (it == table.end()) {
        return std::nullopt;
    }
    const auto jt = it->second.find(method);
    if (jt == it->second.end()) {
        return std::nullopt;
    }
    return jt->second;
}

double benchmark_nu(std::string_view dataset) {
    return dataset == "pima" || dataset == "seeds" ? 0.3 : 0.2;
}

}  // namespace sdcil
