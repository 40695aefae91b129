#include "sdcil/dataset.hpp"

#include "sdcil/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace sdcil {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\"");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view tok) {
    if (tok.empty()) {
        return std::nullopt;
    }
    if (tok.front() == '+') {
        tok.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

LabeledDataset::LabeledDataset(Matrix features, std::vector<Label> labels, std::vector<std::string> label_names)
    : features_(std::move(features)), labels_(std::move(labels)), label_names_(std::move(label_names)) {
    if (features_.rows() != labels_.size()) {
        throw DataError("feature rows (" + std::to_string(features_.rows()) + ") do not match label count (" +
                        std::to_string(labels_.size()) + ")");
    }
    if (!labels_.empty() && features_.cols() == 0) {
        throw DataError("dataset needs at least one feature column");
    }
    for (double v : features_.values()) {
        if (!std::isfinite(v)) {
            throw DataError("dataset contains a non-finite feature value");
        }
    }
    std::set<Label> ids(labels_.begin(), labels_.end());
    class_ids_.assign(ids.begin(), ids.end());
}

std::vector<std::size_t> LabeledDataset::indices_of(Label label) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) {
            idx.push_back(i);
        }
    }
    return idx;
}

Matrix LabeledDataset::class_rows(Label label) const {
    const auto idx = indices_of(label);
    return features_.select_rows(idx);
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> idx) const {
    std::vector<Label> labels;
    labels.reserve(idx.size());
    for (auto i : idx) {
        labels.push_back(labels_.at(i));
    }
    return {features_.select_rows(idx), std::move(labels), label_names_};
}

std::string LabeledDataset::name_of(Label label) const {
    if (label >= 0 && static_cast<std::size_t>(label) < label_names_.size()) {
        return label_names_[static_cast<std::size_t>(label)];
    }
    return std::to_string(label);
}

Scaler Scaler::identity(std::size_t dim) {
    return {std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
}

std::vector<double> Scaler::apply(std::span<const double> x) const {
    if (x.size() != mean.size()) {
        throw DataError("scaler expects " + std::to_string(mean.size()) + " features, got " + std::to_string(x.size()));
    }
    std::vector<double> z(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        z[j] = (x[j] - mean[j]) / stddev[j];
    }
    return z;
}

Matrix Scaler::apply(const Matrix &x) const {
    Matrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto z = apply(x.row(i));
        std::copy(z.begin(), z.end(), out.row(i).begin());
    }
    return out;
}

std::vector<double> Scaler::invert(std::span<const double> z) const {
    if (z.size() != mean.size()) {
        throw DataError("scaler dimension mismatch");
    }
    std::vector<double> x(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        x[j] = z[j] * stddev[j] + mean[j];
    }
    return x;
}

Matrix Scaler::invert(const Matrix &z) const {
    Matrix out(z.rows(), z.cols());
    for (std::size_t i = 0; i < z.rows(); ++i) {
        const auto x = invert(z.row(i));
        std::copy(x.begin(), x.end(), out.row(i).begin());
    }
    return out;
}

LabeledDataset load_csv(const std::filesystem::path &path, std::optional<std::size_t> label_column) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }

    std::vector<double> values;
    std::vector<std::string> tokens;
    std::size_t width = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    bool first_content = true;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split_commas(line);
        if (cells.size() < 2) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected at least two columns");
        }
        const std::size_t label_at = label_column.value_or(cells.size() - 1);
        if (label_at >= cells.size()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": label column out of range");
        }

        if (first_content) {
            first_content = false;
            bool any_numeric = false;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c != label_at && parse_number(cells[c])) {
                    any_numeric = true;
                }
            }
            if (!any_numeric) {
                continue;  // header
            }
        }
        if (width == 0) {
            width = cells.size();
        }
        if (cells.size() != width) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " + std::to_string(width) +
                            " columns, found " + std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c == label_at) {
                if (cells[c].empty()) {
                    throw DataError(path.string() + ":" + std::to_string(line_no) + ": empty label");
                }
                tokens.emplace_back(cells[c]);
                continue;
            }
            const auto v = parse_number(cells[c]);
            if (!v || !std::isfinite(*v)) {
                throw DataError(path.string() + ":" + std::to_string(line_no) + ": non-numeric feature '" +
                                std::string(cells[c]) + "' in column " + std::to_string(c + 1));
            }
            values.push_back(*v);
        }
        ++rows;
    }
    if (rows == 0) {
        throw DataError(path.string() + ": no data rows");
    }

    // Numeric labels sort by value, anything else lexicographically.
    std::set<std::string> distinct(tokens.begin(), tokens.end());
    std::vector<std::string> names(distinct.begin(), distinct.end());
    const bool numeric_labels =
        std::all_of(names.begin(), names.end(), [](const std::string &t) { return parse_number(t).has_value(); });
    if (numeric_labels) {
        std::stable_sort(names.begin(), names.end(),
                         [](const std::string &a, const std::string &b) { return *parse_number(a) < *parse_number(b); });
    }
    std::map<std::string, Label> ids;
    for (std::size_t i = 0; i < names.size(); ++i) {
        ids.emplace(names[i], static_cast<Label>(i));
    }
    std::vector<Label> labels;
    labels.reserve(tokens.size());
    for (const auto &t : tokens) {
        labels.push_back(ids.at(t));
    }
    return {Matrix(rows, width - 1, std::move(values)), std::move(labels), std::move(names)};
}

Matrix load_features(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    Matrix out;
    std::vector<double> row;
    std::size_t line_no = 0;
    bool first_content = true;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split_commas(line);
        if (first_content) {
            first_content = false;
            if (std::none_of(cells.begin(), cells.end(), [](auto c) { return parse_number(c).has_value(); })) {
                continue;
            }
        }
        if (out.rows() > 0 && cells.size() != out.cols()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(out.cols()) + " columns, found " + std::to_string(cells.size()));
        }
        row.clear();
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto v = parse_number(cells[c]);
            if (!v || !std::isfinite(*v)) {
                throw DataError(path.string() + ":" + std::to_string(line_no) + ": non-numeric feature '" +
                                std::string(cells[c]) + "' in column " + std::to_string(c + 1));
            }
            row.push_back(*v);
        }
        out.append_row(row);
    }
    if (out.rows() == 0) {
        throw DataError(path.string() + ": no data rows");
    }
    return out;
}

void save_csv(const LabeledDataset &ds, const std::filesystem::path &path, bool header) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out.precision(17);
    if (header) {
        for (std::size_t j = 0; j < ds.dim(); ++j) {
            out << 'x' << j + 1 << ',';
        }
        out << "label\n";
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (double v : ds.features().row(i)) {
            out << v << ',';
        }
        out << ds.name_of(ds.labels()[i]) << '\n';
    }
}

Standardized fit_standardize(const LabeledDataset &train) {
    const std::size_t n = train.size();
    const std::size_t d = train.dim();
    if (n < 2) {
        throw DataError("standardization needs at least two rows");
    }
    Standardized out;
    out.scaler.mean.assign(d, 0.0);
    out.scaler.stddev.assign(d, 0.0);
    const Matrix &x = train.features();
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mean += x(i, j);
        }
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            var += (x(i, j) - mean) * (x(i, j) - mean);
        }
        double sd = std::sqrt(var / static_cast<double>(n));
        if (sd < Scaler::min_std) {
            out.warnings.push_back("column " + std::to_string(j + 1) + " is constant; spread floored");
            sd = Scaler::min_std;
        }
        out.scaler.mean[j] = mean;
        out.scaler.stddev[j] = sd;
    }
    out.data = transform(out.scaler, train);
    return out;
}

LabeledDataset transform(const Scaler &scaler, const LabeledDataset &ds) {
    return {scaler.apply(ds.features()), ds.labels(), ds.label_names()};
}

std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset &ds, const SplitSpec &spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw DataError("train fraction must lie in (0, 1)");
    }
    std::mt19937_64 rng(spec.seed);
    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> test_idx;

    auto take = [&](std::vector<std::size_t> idx) {
        const auto n = idx.size();
        auto k = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(n)));
        k = std::clamp<std::size_t>(k, 1, n - 1);
        std::shuffle(idx.begin(), idx.end(), rng);
        train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
        test_idx.insert(test_idx.end(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end());
    };

    if (spec.stratified) {
        for (Label c : ds.class_ids()) {
            auto idx = ds.indices_of(c);
            if (idx.size() < 2) {
                throw DataError("class " + ds.name_of(c) + " has fewer than two samples; cannot split");
            }
            take(std::move(idx));
        }
    } else {
        if (ds.size() < 2) {
            throw DataError("cannot split fewer than two samples");
        }
        std::vector<std::size_t> idx(ds.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        take(std::move(idx));
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    return {ds.subset(train_idx), ds.subset(test_idx)};
}

LabeledDataset make_toy(ToyShape shape, std::size_t n_per_class, std::uint64_t seed) {
    if (n_per_class < 10) {
        throw DataError("toy generator needs at least 10 samples per class");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr double two_pi = 2.0 * std::numbers::pi;

    Matrix x;
    std::vector<Label> y;
    auto push = [&](double a, double b, Label label) {
        const double r[2] = {a, b};
        x.append_row(r);
        y.push_back(label);
    };

    switch (shape) {
    case ToyShape::blobs: {
        for (Label c = 0; c < 3; ++c) {
            const double angle = two_pi * c / 3.0;
            const double cx = 5.0 * std::cos(angle);
            const double cy = 5.0 * std::sin(angle);
            for (std::size_t i = 0; i < n_per_class; ++i) {
                push(cx + 0.8 * gauss(rng), cy + 0.8 * gauss(rng), c);
            }
        }
        break;
    }
    case ToyShape::rings: {
        // Uniform over area: radius = sqrt(U(r0^2, r1^2)).
        auto annulus = [&](double r0, double r1, Label label) {
            for (std::size_t i = 0; i < n_per_class; ++i) {
                const double r = std::sqrt(r0 * r0 + (r1 * r1 - r0 * r0) * unit(rng));
                const double t = two_pi * unit(rng);
                push(r * std::cos(t), r * std::sin(t), label);
            }
        };
        annulus(0.0, 1.0, 0);
        annulus(2.0, 3.0, 1);
        break;
    }
    case ToyShape::moons: {
        for (std::size_t i = 0; i < n_per_class; ++i) {
            const double t = std::numbers::pi * unit(rng);
            push(std::cos(t) + 0.1 * gauss(rng), std::sin(t) + 0.1 * gauss(rng), 0);
        }
        for (std::size_t i = 0; i < n_per_class; ++i) {
            const double t = std::numbers::pi * unit(rng);
            push(1.0 - std::cos(t) + 0.1 * gauss(rng), 0.5 - std::sin(t) + 0.1 * gauss(rng), 1);
        }
        break;
    }
    }
    return {std::move(x), std::move(y)};
}

LabeledDataset make_waveform(std::size_t n, std::uint64_t seed) {
    constexpr std::size_t dim = 21;
    // Base waves on positions 1..21: h1 peaks at 11, h2 at 15, h3 at 7.
    auto tri = [](double m, double peak) { return std::max(6.0 - std::abs(m - peak), 0.0); };
    constexpr double peaks[3] = {11.0, 15.0, 7.0};
    constexpr int mix[3][2] = {{0, 1}, {0, 2}, {1, 2}};

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 2);

    Matrix x(n, dim);
    std::vector<Label> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int c = pick(rng);
        const double u = unit(rng);
        for (std::size_t m = 0; m < dim; ++m) {
            const double pos = static_cast<double>(m + 1);
            x(i, m) = u * tri(pos, peaks[mix[c][0]]) + (1.0 - u) * tri(pos, peaks[mix[c][1]]) + noise(rng);
        }
        y[i] = c;
    }
    return {std::move(x), std::move(y)};
}

std::optional<ToyShape> parse_toy_shape(std::string_view name) {
    if (name == "blobs") {
        return ToyShape::blobs;
    }
    if (name == "rings") {
        return ToyShape::rings;
    }
    if (name == "moons" || name == "moons-like") {
        return ToyShape::moons;
    }
    return std::nullopt;
}

}  // namespace sdcil
