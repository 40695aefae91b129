#include "sdcil/cil.hpp"

#include "sdcil/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sdcil {

using json = nlohmann::json;

std::string_view region_name(Region r) {
    switch (r) {
    case Region::unique_positive:
        return "unique_positive";
    case Region::multi_positive:
        return "multi_positive";
    case Region::none_positive:
        return "none_positive";
    }
    return "unknown";
}

namespace {

json matrix_to_json(const Matrix &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    }
    return rows;
}

Matrix matrix_from_json(const json &j, std::size_t cols) {
    Matrix m;
    for (const auto &r : j) {
        const auto values = r.get<std::vector<double>>();
        if (values.size() != cols) {
            throw FormatError("matrix row has " + std::to_string(values.size()) + " entries, expected " +
                              std::to_string(cols));
        }
        m.append_row(values);
    }
    if (m.rows() == 0) {
        m = Matrix(0, cols);
    }
    return m;
}

json class_to_json(const ClassEntry &e) {
    const auto &m = e.model;
    return {{"label", e.label},
            {"name", e.name},
            {"nu", m.nu},
            {"width", m.width.value()},
            {"rho", m.rho},
            {"train_count", m.train_count},
            {"converged", m.converged},
            {"sv_alphas", m.sv_alphas},
            {"sv_matrix", matrix_to_json(m.support_vectors)}};
}

ClassEntry class_from_json(const json &j, std::size_t dim) {
    ClassEntry e;
    e.label = j.at("label").get<Label>();
    e.name = j.at("name").get<std::string>();
    auto &m = e.model;
    m.class_label = e.label;
    m.nu = j.at("nu").get<double>();
    m.width = KernelWidth(j.at("width").get<double>());
    m.rho = j.at("rho").get<double>();
    m.train_count = j.at("train_count").get<std::size_t>();
    m.converged = j.at("converged").get<bool>();
    m.sv_alphas = j.at("sv_alphas").get<std::vector<double>>();
    m.support_vectors = matrix_from_json(j.at("sv_matrix"), dim);
    if (m.support_vectors.rows() != m.sv_alphas.size() || m.sv_alphas.empty()) {
        throw FormatError("class " + std::to_string(e.label) + ": support vectors and multipliers disagree");
    }
    m.w_norm = hyperplane_norm(m.support_vectors, m.sv_alphas, m.width);
    return e;
}

json pair_to_json(const PairwiseClassifier &p) {
    return {{"a", p.label_a},
            {"b", p.label_b},
            {"width", p.width.value()},
            {"cost", p.cost},
            {"bias", p.bias},
            {"cv_accuracy", p.cv_accuracy},
            {"train_accuracy", p.train_accuracy},
            {"coeffs", p.coeffs},
            {"vectors", matrix_to_json(p.vectors)}};
}

PairwiseClassifier pair_from_json(const json &j, std::size_t dim) {
    PairwiseClassifier p;
    p.label_a = j.at("a").get<Label>();
    p.label_b = j.at("b").get<Label>();
    p.width = KernelWidth(j.at("width").get<double>());
    p.cost = j.at("cost").get<double>();
    p.bias = j.at("bias").get<double>();
    p.cv_accuracy = j.at("cv_accuracy").get<double>();
    p.train_accuracy = j.at("train_accuracy").get<double>();
    p.coeffs = j.at("coeffs").get<std::vector<double>>();
    p.vectors = matrix_from_json(j.at("vectors"), dim);
    if (p.vectors.rows() != p.coeffs.size()) {
        throw FormatError("pair entry: vectors and coefficients disagree");
    }
    return p;
}

json config_to_json(const CilConfig &c) {
    std::vector<double> widths;
    for (auto w : c.cv.width_grid) {
        widths.push_back(w.value());
    }
    return {{"nu_default", c.nu_default},
            {"k_neighbors", c.k_neighbors},
            {"side_threshold", c.side_threshold},
            {"width_candidates", c.width_candidates},
            {"cv",
             {{"folds", c.cv.folds},
              {"cost_grid", c.cv.cost_grid},
              {"width_grid", widths},
              {"width_count", c.cv.width_count},
              {"seed", c.cv.seed}}},
            {"solver",
             {{"kkt_tolerance", c.solver.kkt_tolerance},
              {"max_iterations", c.solver.max_iterations},
              {"seed", c.solver.seed}}}};
}

CilConfig config_from_json(const json &j) {
    CilConfig c;
    c.nu_default = j.at("nu_default").get<double>();
    c.k_neighbors = j.at("k_neighbors").get<std::size_t>();
    c.side_threshold = j.at("side_threshold").get<double>();
    c.width_candidates = j.at("width_candidates").get<std::size_t>();
    const auto &cv = j.at("cv");
    c.cv.folds = cv.at("folds").get<std::size_t>();
    c.cv.cost_grid = cv.at("cost_grid").get<std::vector<double>>();
    c.cv.width_grid.clear();
    for (double w : cv.at("width_grid").get<std::vector<double>>()) {
        c.cv.width_grid.emplace_back(w);
    }
    c.cv.width_count = cv.at("width_count").get<std::size_t>();
    c.cv.seed = cv.at("seed").get<std::uint64_t>();
    const auto &s = j.at("solver");
    c.solver.kkt_tolerance = s.at("kkt_tolerance").get<double>();
    c.solver.max_iterations = s.at("max_iterations").get<std::size_t>();
    c.solver.seed = s.at("seed").get<std::uint64_t>();
    return c;
}

}  // namespace

CilModel::CilModel(CilConfig config, std::optional<Scaler> scaler)
    : config_(std::move(config)), scaler_(std::move(scaler)) {
    if (!(config_.nu_default > 0.0 && config_.nu_default <= 1.0)) {
        throw DataError("default nu must lie in (0, 1]");
    }
    if (config_.width_candidates == 0) {
        throw DataError("width candidate count must be positive");
    }
}

const ClassEntry *CilModel::find(Label label) const {
    for (const auto &e : classes_) {
        if (e.label == label) {
            return &e;
        }
    }
    return nullptr;
}

std::size_t CilModel::dim() const {
    if (scaler_) {
        return scaler_->dim();
    }
    return classes_.empty() ? 0 : classes_.front().model.dim();
}

std::vector<double> CilModel::standardize(std::span<const double> x) const {
    if (classes_.empty()) {
        throw DataError("no classes registered");
    }
    if (x.size() != dim()) {
        throw DataError("sample has " + std::to_string(x.size()) + " features, model expects " + std::to_string(dim()));
    }
    if (scaler_) {
        return scaler_->apply(x);
    }
    return {x.begin(), x.end()};
}

AddClassReport CilModel::add_class(Label label, const Matrix &raw_rows, std::optional<double> nu, std::string name) {
    const auto start = std::chrono::steady_clock::now();
    if (find(label) != nullptr) {
        throw DataError("class " + std::to_string(label) + " is already registered");
    }
    if (raw_rows.rows() < 2) {
        throw DataError("a class needs at least two samples");
    }
    if (dim() != 0 && raw_rows.cols() != dim()) {
        throw DataError("class samples have " + std::to_string(raw_rows.cols()) + " features, model expects " +
                        std::to_string(dim()));
    }
    const double class_nu = nu.value_or(config_.nu_default);
    if (!(class_nu > 0.0 && class_nu <= 1.0)) {
        throw DataError("nu must lie in (0, 1]");
    }
    if (class_nu * static_cast<double>(raw_rows.rows()) < 1.0) {
        throw DataError("nu * n < 1 for class " + std::to_string(label));
    }

    AddClassReport report;
    report.label = label;
    if (class_nu < 0.1 || class_nu > 0.4) {
        report.warnings.push_back("nu = " + std::to_string(class_nu) + " is outside the usual [0.1, 0.4] range");
    }

    const Scaler scaler = scaler_.value_or(Scaler::identity(raw_rows.cols()));
    const Matrix x = scaler.apply(raw_rows);

    const std::size_t k = config_.k_neighbors != 0 ? std::min(config_.k_neighbors, x.rows() - 1)
                                                   : default_neighbor_count(x.rows());
    if (k < 2) {
        throw DataError("class " + std::to_string(label) + " is too small for boundary detection");
    }
    report.partition = beps_partition(x, k, config_.side_threshold);
    report.selection = select_width(x, class_nu, candidate_widths(x, config_.width_candidates), report.partition,
                                    config_.solver, label);
    if (report.selection.fallback) {
        report.warnings.push_back("no width kept the support-vector fraction in [nu, 1.5 nu]; used the closest");
    }

    ClassEntry entry;
    entry.label = label;
    entry.name = name.empty() ? std::to_string(label) : std::move(name);
    entry.model = report.selection.model;
    if (entry.model.support_vectors.rows() < 2) {
        throw TrainingError("class " + std::to_string(label) + " kept fewer than two support vectors");
    }

    std::vector<std::pair<PairKey, PairwiseClassifier>> fresh;
    for (const auto &old : classes_) {
        auto clf = train_pair(old.model.support_vectors, old.label, entry.model.support_vectors, label, config_.cv,
                              config_.solver);
        fresh.emplace_back(PairKey{clf.label_a, clf.label_b}, std::move(clf));
    }

    // Commit.
    if (!scaler_) {
        scaler_ = scaler;
    }
    classes_.push_back(std::move(entry));
    for (auto &[key, clf] : fresh) {
        pairs_.emplace(key, std::move(clf));
    }
    report.new_pairs = fresh.size();
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

CilModel::RegionInfo CilModel::classify_region(std::span<const double> z) const {
    RegionInfo info;
    std::vector<Label> positive;
    for (const auto &e : classes_) {
        const double v = decision_value(e.model, z);
        info.values[e.label] = v;
        if (v > 0.0) {
            positive.push_back(e.label);
        }
    }
    if (positive.size() == 1) {
        info.region = Region::unique_positive;
        info.possible = positive;
    } else if (positive.size() > 1) {
        info.region = Region::multi_positive;
        info.possible = positive;
    } else {
        info.region = Region::none_positive;
        for (const auto &e : classes_) {
            info.possible.push_back(e.label);
        }
    }
    std::sort(info.possible.begin(), info.possible.end());
    return info;
}

PredictionDetail CilModel::predict_detail(std::span<const double> x) const {
    const auto z = standardize(x);
    auto info = classify_region(z);

    PredictionDetail out;
    out.region = info.region;
    out.possible = info.possible;
    out.ocsvm_values = info.values;
    if (out.possible.size() == 1) {
        out.label = out.possible.front();
        return out;
    }
    for (Label l : out.possible) {
        out.votes[l] = 0;
    }
    for (std::size_t i = 0; i < out.possible.size(); ++i) {
        for (std::size_t j = i + 1; j < out.possible.size(); ++j) {
            const auto &clf = pairs_.at({out.possible[i], out.possible[j]});
            ++out.votes[predict_pair(clf, z)];
        }
    }
    // Most votes, then largest one-class decision value, then smallest label.
    Label best = out.possible.front();
    for (Label l : out.possible) {
        const int vl = out.votes[l];
        const int vb = out.votes[best];
        if (vl > vb || (vl == vb && out.ocsvm_values[l] > out.ocsvm_values[best])) {
            best = l;
        }
    }
    out.label = best;
    return out;
}

Label CilModel::predict(std::span<const double> x) const { return predict_detail(x).label; }

Label CilModel::ocsvm_nn_predict(std::span<const double> x) const {
    const auto z = standardize(x);
    const auto info = classify_region(z);
    if (info.possible.size() == 1) {
        return info.possible.front();
    }
    Label best = info.possible.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (Label l : info.possible) {
        const auto &sv = find(l)->model.support_vectors;
        for (std::size_t i = 0; i < sv.rows(); ++i) {
            const double d = squared_distance(sv.row(i), z);
            if (d < best_d || (d == best_d && l < best)) {
                best_d = d;
                best = l;
            }
        }
    }
    return best;
}

std::vector<double> CilModel::ocsvm_values(std::span<const double> x) const {
    const auto z = standardize(x);
    std::vector<double> out;
    for (const auto &e : classes_) {
        out.push_back(decision_value(e.model, z));
    }
    return out;
}

std::string CilModel::class_payload(Label label) const {
    const auto *e = find(label);
    if (e == nullptr) {
        throw DataError("class " + std::to_string(label) + " is not registered");
    }
    return class_to_json(*e).dump();
}

std::string CilModel::pair_payload(Label a, Label b) const {
    const auto it = pairs_.find({std::min(a, b), std::max(a, b)});
    if (it == pairs_.end()) {
        throw DataError("no pairwise classifier for (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    return pair_to_json(it->second).dump();
}

std::string CilModel::to_json_string(int indent) const {
    json j;
    j["format_version"] = model_format_version;
    j["dim"] = dim();
    if (scaler_) {
        j["scaler"] = {{"mean", scaler_->mean}, {"std", scaler_->stddev}};
    } else {
        j["scaler"] = nullptr;
    }
    j["classes"] = json::array();
    for (const auto &e : classes_) {
        j["classes"].push_back(class_to_json(e));
    }
    j["pairs"] = json::array();
    for (const auto &[key, clf] : pairs_) {
        j["pairs"].push_back(pair_to_json(clf));
    }
    j["config"] = config_to_json(config_);
    return j.dump(indent);
}

CilModel CilModel::from_json_string(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw FormatError(std::string("corrupt model file: ") + e.what());
    }
    try {
        if (!j.is_object() || !j.contains("format_version")) {
            throw FormatError("corrupt model file: missing format_version");
        }
        const int version = j.at("format_version").get<int>();
        if (version != model_format_version) {
            throw FormatError("unsupported model format version " + std::to_string(version) + " (expected " +
                              std::to_string(model_format_version) + ")");
        }
        std::optional<Scaler> scaler;
        if (!j.at("scaler").is_null()) {
            Scaler s;
            s.mean = j.at("scaler").at("mean").get<std::vector<double>>();
            s.stddev = j.at("scaler").at("std").get<std::vector<double>>();
            if (s.mean.size() != s.stddev.size()) {
                throw FormatError("corrupt model file: scaler sizes differ");
            }
            scaler = std::move(s);
        }
        const auto dim = j.at("dim").get<std::size_t>();
        CilModel model(config_from_json(j.at("config")), std::move(scaler));
        for (const auto &c : j.at("classes")) {
            auto entry = class_from_json(c, dim);
            if (model.find(entry.label) != nullptr) {
                throw FormatError("corrupt model file: duplicate class " + std::to_string(entry.label));
            }
            model.classes_.push_back(std::move(entry));
        }
        for (const auto &p : j.at("pairs")) {
            auto clf = pair_from_json(p, dim);
            if (model.find(clf.label_a) == nullptr || model.find(clf.label_b) == nullptr ||
                clf.label_a >= clf.label_b) {
                throw FormatError("corrupt model file: pair references unknown classes");
            }
            model.pairs_.emplace(PairKey{clf.label_a, clf.label_b}, std::move(clf));
        }
        const std::size_t k = model.classes_.size();
        if (model.pairs_.size() != k * (k - (k > 0 ? 1 : 0)) / 2) {
            throw FormatError("corrupt model file: pair table is incomplete");
        }
        return model;
    } catch (const json::exception &e) {
        throw FormatError(std::string("corrupt model file: ") + e.what());
    } catch (const DataError &e) {
        throw FormatError(std::string("corrupt model file: ") + e.what());
    }
}

void CilModel::save(const std::filesystem::path &path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << to_json_string(1) << '\n';
    if (!out) {
        throw DataError("failed writing " + path.string());
    }
}

CilModel CilModel::load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_string(buf.str());
}

Label knn_predict(const LabeledDataset &train, std::span<const double> x, std::size_t k) {
    const std::size_t n = train.size();
    if (n == 0) {
        throw DataError("nearest-neighbour vote needs training data");
    }
    if (k < 1 || k > n) {
        throw DataError("k must lie in [1, n]");
    }
    if (x.size() != train.dim()) {
        throw DataError("sample dimension does not match training data");
    }
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        dist[i] = {squared_distance(train.features().row(i), x), i};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::map<Label, std::size_t> count;
    std::size_t top = 0;
    for (std::size_t q = 0; q < k; ++q) {
        top = std::max(top, ++count[train.labels()[dist[q].second]]);
    }
    for (std::size_t q = 0; q < k; ++q) {
        const Label l = train.labels()[dist[q].second];
        if (count[l] == top) {
            return l;
        }
    }
    return train.labels()[dist.front().second];
}

BatchOneVsOne::BatchOneVsOne(const LabeledDataset &train, const CvConfig &cv, const SolverConfig &cfg)
    : labels_(train.class_ids()) {
    if (labels_.size() < 2) {
        throw DataError("batch 1-vs-1 needs at least two classes");
    }
    std::vector<Matrix> rows;
    for (Label l : labels_) {
        rows.push_back(train.class_rows(l));
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        for (std::size_t j = i + 1; j < labels_.size(); ++j) {
            pairs_.emplace(CilModel::PairKey{labels_[i], labels_[j]},
                           train_pair(rows[i], labels_[i], rows[j], labels_[j], cv, cfg));
        }
    }
}

Label BatchOneVsOne::predict(std::span<const double> x) const {
    std::map<Label, int> votes;
    std::map<Label, double> margin;
    for (const auto &[key, clf] : pairs_) {
        const double d = pair_decision(clf, x);
        ++votes[d > 0.0 ? clf.label_a : clf.label_b];
        margin[clf.label_a] += d;
        margin[clf.label_b] -= d;
    }
    Label best = labels_.front();
    for (Label l : labels_) {
        if (votes[l] > votes[best] || (votes[l] == votes[best] && margin[l] > margin[best])) {
            best = l;
        }
    }
    return best;
}

Label batch_svm_predict(const LabeledDataset &train, const CvConfig &cv, std::span<const double> x) {
    return BatchOneVsOne(train, cv).predict(x);
}

}  // namespace sdcil
