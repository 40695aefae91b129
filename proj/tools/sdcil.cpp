#include "sdcil/cil.hpp"
#include "sdcil/dataset.hpp"
#include "sdcil/error.hpp"
#include "sdcil/evaluation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace sdcil;

namespace {

constexpr int exit_input = 2;
constexpr int exit_training = 3;

const std::vector<std::string> benchmark_sets{"iris", "seeds", "pima", "waveform", "transfusion"};

Label id_of_token(const LabeledDataset &data, const std::string &token) {
    const auto &names = data.label_names();
    const auto it = std::find(names.begin(), names.end(), token);
    if (it == names.end()) {
        throw DataError("label '" + token + "' does not occur in the data");
    }
    return static_cast<Label>(it - names.begin());
}

std::vector<Label> ids_of_tokens(const LabeledDataset &data, const std::vector<std::string> &tokens) {
    std::vector<Label> out;
    for (const auto &t : tokens) {
        const Label id = id_of_token(data, t);
        if (std::find(out.begin(), out.end(), id) != out.end()) {
            throw DataError("label '" + t + "' listed twice");
        }
        out.push_back(id);
    }
    return out;
}

std::string lower_stem(const fs::path &p) {
    auto s = p.stem().string();
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string fmt(double v, int digits) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(digits) << v;
    return o.str();
}

std::ofstream open_out(const fs::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    return out;
}

CilConfig make_config(double nu, std::size_t widths, std::uint64_t seed, std::size_t max_iterations = 0) {
    CilConfig cfg;
    cfg.solver.max_iterations = max_iterations;
    cfg.nu_default = nu;
    cfg.width_candidates = widths;
    cfg.cv.width_count = widths;
    cfg.cv.seed = seed;
    cfg.solver.seed = seed;
    return cfg;
}

struct Rows {
    Matrix x;
    /// Label token per row; empty for an unlabeled file.
    std::vector<std::string> tokens;
};

/// Raw rows for a model of dimension `dim`. A file with exactly `dim` numeric columns is
/// unlabeled; otherwise the last column is read as the label.
Rows read_rows(const fs::path &path, std::size_t dim) {
    try {
        auto m = load_features(path);
        if (m.cols() == dim) {
            return {std::move(m), {}};
        }
    } catch (const DataError &) {
        // Non-numeric label column; fall through to the labeled reader.
    }
    const auto ds = load_csv(path);
    if (ds.dim() != dim) {
        throw DataError(path.string() + " has " + std::to_string(ds.dim()) + " feature columns, model expects " +
                        std::to_string(dim));
    }
    Rows rows{ds.features(), {}};
    for (Label l : ds.labels()) {
        rows.tokens.push_back(ds.name_of(l));
    }
    return rows;
}

void print_class_report(const std::string &name, const AddClassReport &rep, std::size_t pairs_total) {
    const auto &m = rep.selection.model;
    std::cout << "class " << name << " (id " << rep.label << "): n=" << m.train_count
              << " s=" << fmt(rep.selection.chosen.value(), 4) << " sv_fraction=" << fmt(sv_fraction(m), 3)
              << " nu=" << m.nu << " edge_points=" << rep.partition.edge_indices.size()
              << (rep.selection.fallback ? " [fallback]" : "") << " new_pairs=" << rep.new_pairs
              << " pairs=" << pairs_total << " time=" << fmt(rep.seconds, 3) << "s\n";
    for (const auto &w : rep.warnings) {
        std::cerr << "warning: class " << name << ": " << w << '\n';
    }
}

void write_diagnostics(const fs::path &path, const std::vector<std::pair<std::string, AddClassReport>> &reports) {
    auto out = open_out(path);
    out << "class,width,sv_fraction,max_edge_distance,max_interior_distance,f0,converged,admitted,chosen\n";
    out.precision(17);
    for (const auto &[name, rep] : reports) {
        for (std::size_t c = 0; c < rep.selection.per_candidate.size(); ++c) {
            const auto &r = rep.selection.per_candidate[c];
            out << name << ',' << r.width << ',' << r.sv_fraction << ',' << r.max_edge_distance << ','
                << r.max_interior_distance << ',' << r.f0 << ',' << r.converged << ',' << r.admitted << ','
                << (c == rep.selection.chosen_index) << '\n';
        }
    }
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
    fs::path data;
    fs::path out;
    double nu = 0.2;
    std::vector<std::string> order;
    std::vector<std::string> only;
    fs::path diagnostics;
    std::size_t widths = 30;
    std::uint64_t seed = 0;
    std::size_t max_iterations = 0;
};

int run_train(const TrainArgs &a) {
    const auto data = load_csv(a.data);
    // The scaler sees every row so that classes added later share it.
    const auto fitted = fit_standardize(data);
    for (const auto &w : fitted.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    std::vector<Label> order = a.order.empty() ? data.class_ids() : ids_of_tokens(data, a.order);
    if (!a.order.empty() && a.only.empty() && order.size() != data.class_count()) {
        throw DataError("--order must list every class (or combine it with --only)");
    }
    if (!a.only.empty()) {
        const auto keep = ids_of_tokens(data, a.only);
        std::erase_if(order, [&](Label l) { return std::find(keep.begin(), keep.end(), l) == keep.end(); });
        for (Label l : keep) {
            if (std::find(order.begin(), order.end(), l) == order.end()) {
                order.push_back(l);
            }
        }
    }

    CilModel model(make_config(a.nu, a.widths, a.seed, a.max_iterations), fitted.scaler);
    std::vector<std::pair<std::string, AddClassReport>> reports;
    for (Label l : order) {
        auto rep = model.add_class(l, data.class_rows(l), std::nullopt, data.name_of(l));
        print_class_report(data.name_of(l), rep, model.pairs().size());
        reports.emplace_back(data.name_of(l), std::move(rep));
    }
    model.save(a.out);
    if (!a.diagnostics.empty()) {
        write_diagnostics(a.diagnostics, reports);
    }
    std::cout << "classes=" << model.classes().size() << " pairs=" << model.pairs().size() << " -> " << a.out.string()
              << '\n';
    return 0;
}

// ---- add-class ------------------------------------------------------------

struct AddArgs {
    fs::path model;
    fs::path data;
    std::string label;
    std::optional<double> nu;
    fs::path out;
};

int run_add_class(const AddArgs &a) {
    auto model = CilModel::load(a.model);
    for (const auto &e : model.classes()) {
        if (e.name == a.label) {
            throw DataError("class '" + a.label + "' is already registered");
        }
    }
    if (model.dim() == 0) {
        throw DataError("model has no feature dimension yet; use train for the first class");
    }
    auto rows = read_rows(a.data, model.dim());
    Matrix x = rows.x;
    if (!rows.tokens.empty()) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < rows.tokens.size(); ++i) {
            if (rows.tokens[i] == a.label) {
                keep.push_back(i);
            }
        }
        if (keep.empty()) {
            throw DataError("no rows labeled '" + a.label + "' in " + a.data.string());
        }
        x = rows.x.select_rows(keep);
    }
    Label id = 0;
    for (const auto &e : model.classes()) {
        id = std::max(id, e.label + 1);
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = model.add_class(id, x, a.nu, a.label);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    print_class_report(a.label, rep, model.pairs().size());
    const auto out = a.out.empty() ? a.model : a.out;
    model.save(out);
    std::cout << "incremental wall-clock " << fmt(secs, 3) << "s; classes=" << model.classes().size()
              << " pairs=" << model.pairs().size() << " -> " << out.string() << '\n';
    return 0;
}

// ---- predict --------------------------------------------------------------

struct PredictArgs {
    fs::path model;
    fs::path data;
    fs::path out;
    bool detail = false;
};

int run_predict(const PredictArgs &a) {
    const auto model = CilModel::load(a.model);
    if (model.classes().empty()) {
        throw DataError("no classes registered");
    }
    const auto rows = read_rows(a.data, model.dim());
    std::ofstream file;
    if (!a.out.empty()) {
        file = open_out(a.out);
    }
    std::ostream &out = a.out.empty() ? std::cout : file;
    out << "row,label";
    if (a.detail) {
        out << ",region";
        for (const auto &e : model.classes()) {
            out << ",value_" << e.name;
        }
    }
    out << '\n';
    out.precision(17);
    std::size_t hits = 0;
    std::size_t regions[3] = {0, 0, 0};
    for (std::size_t i = 0; i < rows.x.rows(); ++i) {
        const auto d = model.predict_detail(rows.x.row(i));
        const auto &name = model.find(d.label)->name;
        ++regions[static_cast<int>(d.region)];
        out << i << ',' << name;
        if (a.detail) {
            out << ',' << region_name(d.region);
            for (const auto &e : model.classes()) {
                out << ',' << d.ocsvm_values.at(e.label);
            }
        }
        out << '\n';
        if (!rows.tokens.empty() && rows.tokens[i] == name) {
            ++hits;
        }
    }
    std::ostream &summary = a.out.empty() ? std::cerr : std::cout;
    summary << "rows=" << rows.x.rows() << " unique_positive=" << regions[0] << " multi_positive=" << regions[1]
            << " none_positive=" << regions[2];
    if (!rows.tokens.empty()) {
        summary << " accuracy=" << fmt(100.0 * static_cast<double>(hits) / static_cast<double>(rows.x.rows()), 2)
                << "%";
    }
    summary << '\n';
    return 0;
}

// ---- evaluate -------------------------------------------------------------

struct EvalArgs {
    fs::path data;
    std::vector<std::string> methods{"sdcil"};
    std::size_t trials = 10;
    std::uint64_t seed = 0;
    std::optional<double> nu;
    std::string name;
    fs::path out;
    std::size_t widths = 30;
};

std::vector<Method> parse_methods(const std::vector<std::string> &names) {
    std::vector<Method> out;
    for (const auto &n : names) {
        const auto m = parse_method(n);
        if (!m) {
            throw DataError("unknown method '" + n + "' (expected sdcil, knn, ocsvm-nn or batch-svm)");
        }
        out.push_back(*m);
    }
    return out;
}

void print_report(const EvalReport &r, double seconds) {
    std::size_t u = 0;
    std::size_t mp = 0;
    std::size_t np = 0;
    for (const auto &t : r.trials) {
        u += t.unique_pos;
        mp += t.multi_pos;
        np += t.none_pos;
    }
    const auto &t0 = r.trials.front();
    std::cout << r.dataset << ' ' << method_name(r.method) << ": " << fmt(100.0 * r.mean_accuracy, 2) << "% +- "
              << fmt(100.0 * r.std_accuracy, 2) << " (percent) | " << fmt(r.mean_accuracy, 4) << " +- "
              << fmt(r.std_accuracy, 4) << " (fraction); trials=" << r.trials.size() << " split=" << t0.train_size
              << "/" << t0.test_size;
    if (r.method == Method::sdcil) {
        std::cout << " regions u/m/n=" << u << "/" << mp << "/" << np;
    }
    std::cout << " time=" << fmt(seconds, 2) << "s\n";
}

int run_evaluate(const EvalArgs &a) {
    const auto data = load_csv(a.data);
    const auto name = a.name.empty() ? lower_stem(a.data) : a.name;
    const auto methods = parse_methods(a.methods);
    EvalOptions opts;
    opts.trials = a.trials;
    opts.seed = a.seed;
    opts.cil = make_config(a.nu.value_or(benchmark_nu(name)), a.widths, a.seed);
    opts.batch_cv = opts.cil.cv;
    const auto t0 = std::chrono::steady_clock::now();
    const auto reports = evaluate(data, name, methods, opts);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "nu=" << opts.cil.nu_default << '\n';
    for (const auto &r : reports) {
        print_report(r, secs);
    }
    if (!a.out.empty()) {
        auto out = open_out(a.out);
        write_trials_csv(out, reports);
    }
    return 0;
}

// ---- map ------------------------------------------------------------------

struct MapArgs {
    fs::path model;
    std::vector<double> bounds;
    std::vector<std::size_t> res{200, 200};
    std::string out = "map";
};

void write_pgm(const fs::path &path, std::size_t w, std::size_t h, const std::vector<int> &px, int maxval) {
    auto out = open_out(path);
    out << "P2\n" << w << ' ' << h << '\n' << maxval << '\n';
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            out << px[r * w + c] << (c + 1 == w ? '\n' : ' ');
        }
    }
}

int run_map(const MapArgs &a) {
    const auto model = CilModel::load(a.model);
    if (model.classes().empty()) {
        throw DataError("no classes registered");
    }
    if (model.dim() != 2) {
        throw DataError("map needs a two-dimensional model, this one has " + std::to_string(model.dim()) +
                        " features");
    }
    if (a.bounds.size() != 4 || !(a.bounds[0] < a.bounds[1]) || !(a.bounds[2] < a.bounds[3])) {
        throw DataError("--bounds expects xmin,xmax,ymin,ymax with min < max");
    }
    if (a.res.size() != 2 || a.res[0] == 0 || a.res[1] == 0) {
        throw DataError("--res expects W,H with W, H >= 1");
    }
    const std::size_t w = a.res[0];
    const std::size_t h = a.res[1];
    const double dx = (a.bounds[1] - a.bounds[0]) / static_cast<double>(w);
    const double dy = (a.bounds[3] - a.bounds[2]) / static_cast<double>(h);

    std::vector<int> labels(w * h);
    std::vector<int> regions(w * h);
    auto cells = open_out(a.out + "_cells.csv");
    cells << "x,y,label,region\n";
    cells.precision(17);
    int max_label = 1;
    for (const auto &e : model.classes()) {
        max_label = std::max(max_label, e.label);
    }
    // Row 0 is the top of the image (largest y).
    for (std::size_t r = 0; r < h; ++r) {
        const double y = a.bounds[3] - (static_cast<double>(r) + 0.5) * dy;
        for (std::size_t c = 0; c < w; ++c) {
            const double x = a.bounds[0] + (static_cast<double>(c) + 0.5) * dx;
            const double p[2] = {x, y};
            const auto d = model.predict_detail(p);
            labels[r * w + c] = d.label;
            regions[r * w + c] = static_cast<int>(d.region);
            cells << x << ',' << y << ',' << model.find(d.label)->name << ',' << region_name(d.region) << '\n';
        }
    }
    write_pgm(a.out + "_labels.pgm", w, h, labels, max_label);
    write_pgm(a.out + "_regions.pgm", w, h, regions, 2);

    auto svs = open_out(a.out + "_svs.csv");
    svs << "class,x,y\n";
    svs.precision(17);
    for (const auto &e : model.classes()) {
        const auto raw = model.scaler() ? model.scaler()->invert(e.model.support_vectors) : e.model.support_vectors;
        for (std::size_t i = 0; i < raw.rows(); ++i) {
            svs << e.name << ',' << raw(i, 0) << ',' << raw(i, 1) << '\n';
        }
    }
    std::cout << "wrote " << a.out << "_labels.pgm, " << a.out << "_regions.pgm, " << a.out << "_cells.csv, "
              << a.out << "_svs.csv (" << w << "x" << h << ")\n";
    return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
    fs::path datasets = "data";
    fs::path out = "bench.csv";
    fs::path trials_out;
    std::size_t trials = 10;
    std::uint64_t seed = 0;
    std::vector<std::string> methods{"sdcil", "batch-svm", "knn", "ocsvm-nn"};
    std::vector<std::string> only;
};

int run_bench(const BenchArgs &a) {
    const auto methods = parse_methods(a.methods);
    auto out = open_out(a.out);
    out << "dataset,method,nu,trials,mean_percent,std_percent,std_fraction,reported_mean_percent,reported_std_as_printed,"
           "delta_points,seconds\n";
    std::ofstream trials_file;
    if (!a.trials_out.empty()) {
        trials_file = open_out(a.trials_out);
    }
    bool header = true;
    std::cout << std::left << std::setw(12) << "dataset" << std::setw(11) << "method" << std::setw(18) << "mean +- std (%)"
              << std::setw(16) << "reported" << "delta\n";
    for (const auto &name : a.only.empty() ? benchmark_sets : a.only) {
        const auto path = a.datasets / (name + ".csv");
        if (!fs::exists(path)) {
            std::cerr << "warning: " << path.string() << " not found, skipping " << name << '\n';
            continue;
        }
        const auto data = load_csv(path);
        EvalOptions opts;
        opts.trials = a.trials;
        opts.seed = a.seed;
        opts.cil.nu_default = benchmark_nu(name);
        const auto t0 = std::chrono::steady_clock::now();
        const auto reports = evaluate(data, name, methods, opts);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto &r : reports) {
            const auto reported = reported_result(name, r.method);
            const double mean = 100.0 * r.mean_accuracy;
            out << name << ',' << method_name(r.method) << ',' << opts.cil.nu_default << ',' << r.trials.size() << ','
                << fmt(mean, 4) << ',' << fmt(100.0 * r.std_accuracy, 4) << ',' << fmt(r.std_accuracy, 6) << ',';
            if (reported) {
                out << reported->mean_percent << ',' << reported->std_as_printed << ',' << fmt(mean - reported->mean_percent, 4);
            } else {
                out << ",,";
            }
            out << ',' << fmt(secs, 2) << '\n';
            std::cout << std::setw(12) << name << std::setw(11) << method_name(r.method) << std::setw(18)
                      << (fmt(mean, 2) + " +- " + fmt(100.0 * r.std_accuracy, 2)) << std::setw(16)
                      << (reported ? fmt(reported->mean_percent, 2) : std::string("-"))
                      << (reported ? fmt(mean - reported->mean_percent, 2) : std::string("-")) << '\n';
        }
        if (trials_file.is_open()) {
            write_trials_csv(trials_file, reports, header);
            header = false;
        }
    }
    return 0;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
    std::string shape = "blobs";
    std::size_t n = 200;
    std::uint64_t seed = 0;
    fs::path out;
};

int run_generate(const GenerateArgs &a) {
    LabeledDataset ds;
    if (a.shape == "waveform") {
        ds = make_waveform(a.n, a.seed);
    } else if (const auto shape = parse_toy_shape(a.shape)) {
        ds = make_toy(*shape, a.n, a.seed);
    } else {
        throw DataError("unknown shape '" + a.shape + "' (expected blobs, rings, moons or waveform)");
    }
    save_csv(ds, a.out);
    std::cout << "wrote " << ds.size() << " rows, " << ds.class_count() << " classes -> " << a.out.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Class-incremental classifier built from per-class one-class SVMs and pairwise SVMs"};
    app.require_subcommand(1);

    TrainArgs train;
    auto *cmd_train = app.add_subcommand("train", "Train a registry, adding classes one at a time");
    cmd_train->add_option("data", train.data, "Labeled CSV (last column is the label)")->required();
    cmd_train->add_option("--out,-o", train.out, "Model file to write")->required();
    cmd_train->add_option("--nu", train.nu, "nu for every class")->capture_default_str();
    cmd_train->add_option("--order", train.order, "Class arrival order, label tokens")->delimiter(',');
    cmd_train->add_option("--only", train.only, "Train only these classes (scaler still uses all rows)")
        ->delimiter(',');
    cmd_train->add_option("--diagnostics", train.diagnostics, "Per-candidate width report CSV");
    cmd_train->add_option("--widths", train.widths, "Number of candidate kernel widths")->capture_default_str();
    cmd_train->add_option("--seed", train.seed, "Seed for solver start and CV folds")->capture_default_str();
    cmd_train->add_option("--max-iterations", train.max_iterations, "Solver iteration cap (0: automatic)")
        ->capture_default_str();

    AddArgs add;
    auto *cmd_add = app.add_subcommand("add-class", "Add one class to an existing model");
    cmd_add->add_option("model", add.model, "Model file")->required();
    cmd_add->add_option("data", add.data, "CSV of the new class (features only, or labeled)")->required();
    cmd_add->add_option("--label,-l", add.label, "Name of the new class")->required();
    cmd_add->add_option("--nu", add.nu, "nu for the new class (default: model setting)");
    cmd_add->add_option("--out,-o", add.out, "Where to write the updated model (default: in place)");

    PredictArgs pred;
    auto *cmd_pred = app.add_subcommand("predict", "Label rows with a trained model");
    cmd_pred->add_option("model", pred.model, "Model file")->required();
    cmd_pred->add_option("data", pred.data, "CSV of rows (an extra label column enables accuracy)")->required();
    cmd_pred->add_option("--out,-o", pred.out, "Predictions CSV (default: stdout)");
    cmd_pred->add_flag("--detail", pred.detail, "Add region and one-class decision values");

    EvalArgs ev;
    auto *cmd_eval = app.add_subcommand("evaluate", "Repeated stratified 70/30 evaluation");
    cmd_eval->add_option("data", ev.data, "Labeled CSV")->required();
    cmd_eval->add_option("--method,-m", ev.methods, "sdcil, knn, ocsvm-nn, batch-svm")->delimiter(',')
        ->capture_default_str();
    cmd_eval->add_option("--trials", ev.trials)->capture_default_str();
    cmd_eval->add_option("--seed", ev.seed)->capture_default_str();
    cmd_eval->add_option("--nu", ev.nu, "Default: 0.3 for pima and seeds, 0.2 otherwise");
    cmd_eval->add_option("--name", ev.name, "Dataset name in reports (default: file stem)");
    cmd_eval->add_option("--widths", ev.widths, "Number of candidate kernel widths")->capture_default_str();
    cmd_eval->add_option("--out,-o", ev.out, "Per-trial CSV");

    MapArgs map;
    auto *cmd_map = app.add_subcommand("map", "Rasterize a 2-D model's decisions");
    cmd_map->add_option("model", map.model, "Model file")->required();
    cmd_map->add_option("--bounds", map.bounds, "xmin,xmax,ymin,ymax")->delimiter(',')->required();
    cmd_map->add_option("--res", map.res, "W,H")->delimiter(',')->capture_default_str();
    cmd_map->add_option("--out,-o", map.out, "Output prefix")->capture_default_str();

    BenchArgs bench;
    auto *cmd_bench = app.add_subcommand("bench", "All methods on the benchmark datasets, with reported numbers");
    cmd_bench->add_option("--datasets", bench.datasets, "Directory with iris.csv, seeds.csv, ...")
        ->capture_default_str();
    cmd_bench->add_option("--out,-o", bench.out, "Summary CSV")->capture_default_str();
    cmd_bench->add_option("--trials-out", bench.trials_out, "Per-trial CSV");
    cmd_bench->add_option("--trials", bench.trials)->capture_default_str();
    cmd_bench->add_option("--seed", bench.seed)->capture_default_str();
    cmd_bench->add_option("--method,-m", bench.methods)->delimiter(',')->capture_default_str();
    cmd_bench->add_option("--only", bench.only, "Subset of datasets")->delimiter(',');

    GenerateArgs gen;
    auto *cmd_gen = app.add_subcommand("generate", "Write a generated dataset");
    cmd_gen->add_option("--shape", gen.shape, "blobs, rings, moons or waveform")->capture_default_str();
    cmd_gen->add_option("--n", gen.n, "Rows per class (total rows for waveform)")->capture_default_str();
    cmd_gen->add_option("--seed", gen.seed)->capture_default_str();
    cmd_gen->add_option("--out,-o", gen.out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : exit_input;
    }

    try {
        if (cmd_train->parsed()) {
            return run_train(train);
        }
        if (cmd_add->parsed()) {
            return run_add_class(add);
        }
        if (cmd_pred->parsed()) {
            return run_predict(pred);
        }
        if (cmd_eval->parsed()) {
            return run_evaluate(ev);
        }
        if (cmd_map->parsed()) {
            return run_map(map);
        }
        if (cmd_bench->parsed()) {
            return run_bench(bench);
        }
        if (cmd_gen->parsed()) {
            return run_generate(gen);
        }
    } catch (const TrainingError &e) {
        std::cerr << "training failed: " << e.what() << '\n';
        return exit_training;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
