#include "sdcil/ocsvm.hpp"

#include "sdcil/error.hpp"

#include <cmath>
#include <string>

namespace sdcil {

OcsvmModel build_ocsvm(const Matrix &x, const GramMatrix &k, double nu, const SolverConfig &cfg, Label label) {
    if (x.rows() < 2) {
        throw DataError("one-class training needs at least two samples");
    }
    if (k.size() != x.rows()) {
        throw DataError("kernel matrix does not match training rows");
    }
    const auto sol = solve_ocsvm_dual(k, nu, cfg);

    OcsvmModel model;
    model.class_label = label;
    model.width = k.width();
    model.nu = nu;
    model.train_count = x.rows();
    model.rho = sol.offset;
    model.converged = sol.converged;
    for (std::size_t i = 0; i < sol.alphas.size(); ++i) {
        if (sol.alphas[i] > sv_threshold) {
            model.sv_indices.push_back(i);
            model.sv_alphas.push_back(sol.alphas[i]);
        }
    }
    model.support_vectors = x.select_rows(model.sv_indices);
    model.w_norm = hyperplane_norm(model.support_vectors, model.sv_alphas, model.width);
    if (!(model.w_norm > 0.0)) {
        throw TrainingError("one-class model has a degenerate hyperplane");
    }
    return model;
}

OcsvmModel train_ocsvm(const Matrix &x, double nu, KernelWidth s, const SolverConfig &cfg, Label label) {
    return build_ocsvm(x, gram(x, s), nu, cfg, label);
}

double hyperplane_norm(const Matrix &support_vectors, std::span<const double> alphas, KernelWidth s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        acc += alphas[i] * alphas[i];
        for (std::size_t j = i + 1; j < alphas.size(); ++j) {
            acc += 2.0 * alphas[i] * alphas[j] * gaussian(support_vectors.row(i), support_vectors.row(j), s);
        }
    }
    return std::sqrt(std::max(acc, 0.0));
}

double decision_value(const OcsvmModel &model, std::span<const double> x) {
    if (x.size() != model.dim()) {
        throw DataError("sample has " + std::to_string(x.size()) + " features, model expects " +
                        std::to_string(model.dim()));
    }
    const double g = model.width.gamma();
    double acc = 0.0;
    for (std::size_t i = 0; i < model.sv_alphas.size(); ++i) {
        acc += model.sv_alphas[i] * std::exp(-squared_distance(model.support_vectors.row(i), x) * g);
    }
    return acc - model.rho;
}

int predict_one(const OcsvmModel &model, std::span<const double> x) {
    return decision_value(model, x) > 0.0 ? 1 : -1;
}

double cap_height(const OcsvmModel &model) {
    // Every image lies on the unit sphere, so no point is farther than 1 - rho/|w|
    // from the hyperplane on the positive side.
    const double h = model.w_norm - model.rho;
    return h > 1e-12 * model.w_norm ? h : model.w_norm;
}

double normalized_distance(const OcsvmModel &model, std::span<const double> x) {
    return decision_value(model, x) / cap_height(model);
}

double sv_fraction(const OcsvmModel &model) {
    return static_cast<double>(model.sv_alphas.size()) / static_cast<double>(model.train_count);
}

double bounded_sv_fraction(const OcsvmModel &model) {
    const double bound = model.box_bound();
    std::size_t count = 0;
    for (double a : model.sv_alphas) {
        if (a >= bound - bound_margin) {
            ++count;
        }
    }
    return static_cast<double>(count) / static_cast<double>(model.train_count);
}

}  // namespace sdcil
