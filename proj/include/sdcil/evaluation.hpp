#ifndef SDCIL_EVALUATION_HPP
#define SDCIL_EVALUATION_HPP

#include "sdcil/cil.hpp"
#include "sdcil/dataset.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sdcil {

enum class Method { sdcil, knn, ocsvm_nn, batch_svm };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct TrialResult {
    std::uint64_t seed = 0;
    double accuracy = 0.0;
    std::size_t unique_pos = 0;
    std::size_t multi_pos = 0;
    std::size_t none_pos = 0;
    double train_seconds = 0.0;
    std::vector<double> add_class_seconds;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
};

struct EvalReport {
    std::string dataset;
    Method method = Method::sdcil;
    std::vector<TrialResult> trials;
    double mean_accuracy = 0.0;
    /// Sample standard deviation (n - 1 denominator) of the trial accuracies.
    double std_accuracy = 0.0;

    void recompute();
};

struct EvalOptions {
    std::size_t trials = 10;
    std::uint64_t seed = 0;
    double train_fraction = 0.7;
    CilConfig cil;
    /// Cross-validation for the batch 1-vs-1 baseline.
    CvConfig batch_cv;
    std::size_t knn_k = 1;
};

/// Per trial: split with seed `options.seed + trial`, fit the scaler on the training
/// part, train, score the test part. Methods sharing a trained registry (sdcil and
/// ocsvm-nn) train it once per trial.
std::vector<EvalReport> evaluate(const LabeledDataset &data, const std::string &dataset_name,
                                 const std::vector<Method> &methods, const EvalOptions &options);

/// Adds every class of `train` to a fresh registry, in `order` when given (else sorted).
/// Raw-space rows; the scaler is fitted on all of `train` first.
CilModel train_registry(const LabeledDataset &train, const CilConfig &config,
                        const std::vector<Label> &order = {}, std::vector<AddClassReport> *reports = nullptr);

/// Header: method,dataset,trial,seed,accuracy,unique_pos,multi_pos,none_pos,train_seconds
void write_trials_csv(std::ostream &out, const std::vector<EvalReport> &reports, bool header = true);

/// Mean and spread of a reported result; std as printed (a fraction for most methods).
struct ReportedResult {
    double mean_percent;
    double std_as_printed;
};

/// Reported results for the UCI sets: dataset name -> method -> result.
std::optional<ReportedResult> reported_result(std::string_view dataset, Method method);

/// Per-dataset nu used for the UCI benchmark: 0.3 for pima and seeds, 0.2 otherwise.
double benchmark_nu(std::string_view dataset);

}  // namespace sdcil

#endif  // SDCIL_EVALUATION_HPP
