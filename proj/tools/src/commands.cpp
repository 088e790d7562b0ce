#include "grpkit_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "grpkit/error.hpp"
#include "grpkit/parser.hpp"
#include "grpkit_cli/report.hpp"

namespace grpkit::cli {

namespace fs = std::filesystem;

namespace {

struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

MapGerm load_germ(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw LoadError(path + ": cannot read file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_germ(buf.str());
    } catch (const std::exception& e) {
        throw LoadError(path + ":" + e.what());
    }
}

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const LoadError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kComputeError;
    }
}

std::optional<BlockAssignment> blocks_of(const RunOptions& opts) {
    if (!opts.blocks) {
        return std::nullopt;
    }
    try {
        return parse_blocks(*opts.blocks);
    } catch (const std::exception& e) {
        throw LoadError(std::string("--blocks: ") + e.what());
    }
}

Report build_report(const MapGerm& germ, const RunOptions& opts, bool classify) {
    const auto start = std::chrono::steady_clock::now();
    const auto blocks = blocks_of(opts);
    Report r;
    r.germ = germ;
    if (classify) {
        GrpVerdict v = classify_grp(germ, blocks);
        r.table = v.table;
        r.verdict = std::move(v);
    } else {
        r.table = analyze(germ);
    }
    if (opts.equations) {
        DividedDifferences dd(germ);
        for (const auto& row : r.table.rows) {
            r.equations.push_back(dd.space(row.k));
        }
    }
    if (opts.timing) {
        r.elapsed_ms = ms_since(start);
    }
    return r;
}

int emit(const Report& r, const RunOptions& opts, std::ostream& out) {
    if (opts.json) {
        out << to_json(r).dump(2) << "\n";
    } else {
        out << render_text(r);
    }
    return kOk;
}

struct BatchRow {
    std::string file;
    std::string label;
    std::string verdict;  // "ERROR" when the file could not be processed
    std::optional<int> K;
    int t_sign = 0;
    bool necessary = false;
    bool empty_bound = false;
    std::string a_finite;
    std::string reason;
};

BatchRow batch_one(const fs::path& path, const RunOptions& opts) {
    BatchRow row;
    row.file = path.filename().string();
    try {
        const MapGerm germ = load_germ(path.string());
        row.label = germ.label;
        const GrpVerdict v = classify_grp(germ, blocks_of(opts));
        row.verdict = to_string(v.kind);
        if (v.form) {
            row.K = v.form->K;
        }
        row.t_sign = v.t_sign;
        row.necessary = v.table.screens.necessary;
        row.empty_bound = v.table.screens.empty_bound;
        row.a_finite = to_string(v.table.screens.a_finite);
        row.reason = v.reason;
    } catch (const std::exception& e) {
        row.verdict = "ERROR";
        row.reason = e.what();
    }
    return row;
}

}  // namespace

int cmd_dd(const std::string& path, int k, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const MapGerm germ = load_germ(path);
        if (k < 2) {
            throw LoadError("--k must be at least 2");
        }
        out << render_equations(multiple_point_space(germ, k));
        return static_cast<int>(kOk);
    });
}

int cmd_analyze(const std::string& path, const RunOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] { return emit(build_report(load_germ(path), opts, false), opts, out); });
}

int cmd_classify(const std::string& path, const RunOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] { return emit(build_report(load_germ(path), opts, true), opts, out); });
}

int cmd_batch(const std::string& dir, const RunOptions& opts, std::ostream& out, std::ostream& err) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        err << "error: " << dir << ": not a directory\n";
        return kParseError;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().filename().string().front() != '.') {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

    std::vector<std::future<BatchRow>> jobs;
    jobs.reserve(files.size());
    for (const auto& f : files) {
        jobs.push_back(std::async(std::launch::async, batch_one, f, opts));
    }
    std::vector<BatchRow> rows;
    for (auto& j : jobs) {
        rows.push_back(j.get());
    }
    const auto failed = std::count_if(rows.begin(), rows.end(), [](const BatchRow& r) { return r.verdict == "ERROR"; });

    if (opts.json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json j = {{"file", r.file}, {"label", r.label}, {"verdict", r.verdict}};
            if (r.verdict == "ERROR") {
                j["error"] = r.reason;
            } else {
                j["K"] = r.K ? nlohmann::json(*r.K) : nlohmann::json(nullptr);
                j["t_sign"] = r.t_sign == 0 ? nlohmann::json(nullptr) : nlohmann::json(r.t_sign);
                j["necessary"] = r.necessary;
                j["empty_bound"] = r.empty_bound;
                j["a_finite"] = r.a_finite;
                j["reason"] = r.reason;
            }
            arr.push_back(j);
        }
        out << nlohmann::json{{"rows", arr}, {"version", version()}}.dump(2) << "\n";
    } else {
        out << std::left << std::setw(28) << "file" << std::setw(20) << "label" << std::setw(9) << "verdict"
            << std::setw(4) << "K" << std::setw(11) << "necessary" << std::setw(13) << "empty_bound"
            << "a_finite\n";
        for (const auto& r : rows) {
            out << std::setw(28) << r.file << std::setw(20) << r.label << std::setw(9) << r.verdict;
            if (r.verdict == "ERROR") {
                out << r.reason << "\n";
                continue;
            }
            out << std::setw(4) << (r.K ? std::to_string(*r.K) : "-") << std::setw(11)
                << (r.necessary ? "pass" : "FAIL") << std::setw(13) << (r.empty_bound ? "pass" : "FAIL")
                << r.a_finite << "\n";
        }
    }
    return (!rows.empty() && failed == static_cast<long>(rows.size())) ? kParseError : kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiple point spaces and good real perturbations of corank-one map germs", "grpkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version());

    std::string file;
    int k = 2;
    RunOptions opts;
    bool no_timing = false;
    std::string blocks;

    auto* dd = app.add_subcommand("dd", "Print the divided differences f_j^i, i = 2..k");
    dd->add_option("file", file, "Germ document")->required();
    dd->add_option("--k", k, "Multiplicity k >= 2")->required();

    auto* an = app.add_subcommand("analyze", "Classify the multiple point spaces D^k");
    auto* cl = app.add_subcommand("classify", "Decide whether the germ has a good real perturbation");
    for (auto* sub : {an, cl}) {
        sub->add_option("file", file, "Germ document")->required();
        sub->add_flag("--json", opts.json, "Machine-readable output");
        sub->add_flag("--no-timing", no_timing, "Omit wall-clock timing");
        sub->add_flag("--equations", opts.equations, "Also list the equations of each D^k");
    }
    cl->add_option("--blocks", blocks, "Explicit blocks, e.g. u=a,v=b,x=c");

    auto* ba = app.add_subcommand("batch", "Classify every germ document in a directory");
    ba->add_option("dir", file, "Directory")->required();
    ba->add_flag("--json", opts.json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    opts.timing = !no_timing;
    if (!blocks.empty()) {
        opts.blocks = blocks;
    }
    if (dd->parsed()) {
        return cmd_dd(file, k, out, err);
    }
    if (an->parsed()) {
        return cmd_analyze(file, opts, out, err);
    }
    if (cl->parsed()) {
        return cmd_classify(file, opts, out, err);
    }
    return cmd_batch(file, opts, out, err);
}

}  // namespace grpkit::cli
