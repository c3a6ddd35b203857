#include "labt/cli.hpp"

#include "labt/metrics.hpp"
#include "labt/multiscan.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace labt::cli {

namespace fs = std::filesystem;

namespace {

int parse_positive(std::string_view s)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v < 1)
        throw std::invalid_argument("invalid block size '" + std::string(s) + "'");
    return v;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f)
        throw std::runtime_error("write failed for " + path.string());
}

fs::path output_dir(const CliConfig& cfg)
{
    fs::path dir = cfg.output.empty() ? fs::path(".") : cfg.output;
    fs::create_directories(dir);
    return dir;
}

void print_counters(std::ostream& out, int out_of_range, int non_overlap)
{
    out << "out_of_range_count: " << out_of_range << '\n'
        << "non_overlap_count: " << non_overlap << '\n';
}

// Runs the command body, turning exceptions into a diagnostic and exit 1.
template <typename Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const std::exception& e) {
        err << "labt: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

std::optional<BlockSize> parse_block(std::string_view text)
{
    if (text == "auto")
        return std::nullopt;
    const auto x = text.find_first_of("xX");
    if (x == std::string_view::npos) {
        const int side = parse_positive(text);
        return BlockSize{side, side};
    }
    return BlockSize{parse_positive(text.substr(0, x)), parse_positive(text.substr(x + 1))};
}

LabtConfig labt_config(const CliConfig& cfg)
{
    LabtConfig lc;
    switch (cfg.method) {
    case MethodChoice::otsu: lc.method = Otsu{}; break;
    case MethodChoice::adcdf: lc.method = Adcdf(cfg.rho); break;
    case MethodChoice::meank: lc.method = MeanK{cfg.k}; break;
    case MethodChoice::niblack: throw std::invalid_argument("niblack is a per-pixel method, not a block method");
    }
    lc.block = cfg.block;
    lc.mode = cfg.mode;
    lc.seed_global = cfg.seed_global;
    return lc;
}

int cmd_binarize(const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (cfg.output.empty())
            throw std::invalid_argument("binarize needs an output path");
        const GrayImage img = read_pgm_file(cfg.input);

        if (cfg.method == MethodChoice::niblack) {
            MethodReport report{"niblack", 0.0, 0.0, {}, {}, {}, {}};
            std::optional<BinaryImage> bin;
            report.elapsed_s = time_run([&] { bin = niblack_binarize(img, {cfg.window, cfg.k}); });
            report.psnr_db = psnr(img, *bin);
            if (!cfg.timing)
                report.elapsed_s = 0.0;
            write_pgm_file(cfg.output, *bin);
            if (cfg.csv) {
                std::ostringstream csv;
                write_method_csv(csv, std::span(&report, 1));
                write_text(*cfg.csv, csv.str());
            }
            return 0;
        }

        const LabtConfig lc = labt_config(cfg);
        MethodReport report;
        std::optional<BinaryImage> bin;
        if (cfg.multiscan) {
            std::optional<MultiscanResult> ms;
            const double elapsed = time_run([&] { ms = run_multiscan(img, lc); });
            int oor = 0;
            int nov = 0;
            long violations = 0;
            for (std::size_t i = 0; i < ms->runs.size(); ++i) {
                const auto& run = ms->runs[i];
                oor += run.out_of_range_count;
                nov += run.non_overlap_count;
                violations += continuity_violations(run, orient(img, static_cast<ScanOrientation>(i)));
            }
            const auto& g = ms->runs.front().grid;
            out << "grid: " << g.block_w << 'x' << g.block_h << " blocks, " << g.rows << " rows x " << g.cols
                << " cols (3 scans)\n";
            print_counters(out, oor, nov);
            report = {"labt_" + method_name(lc.method) + "_multiscan", psnr(img, ms->combined), elapsed,
                      oor, nov, {}, violations};
            bin = std::move(ms->combined);
        } else {
            std::optional<LabtResult> res;
            const double elapsed = time_run([&] { res = run_labt(img, lc); });
            const auto& g = res->grid;
            out << "grid: " << g.block_w << 'x' << g.block_h << " blocks, " << g.rows << " rows x " << g.cols
                << " cols\n";
            print_counters(out, res->out_of_range_count, res->non_overlap_count);
            report = labt_report("labt_" + method_name(lc.method), img, *res, elapsed);
            bin = std::move(res->binary);
        }
        if (!cfg.timing)
            report.elapsed_s = 0.0;
        write_pgm_file(cfg.output, *bin);
        if (cfg.csv) {
            std::ostringstream csv;
            write_method_csv(csv, std::span(&report, 1));
            write_text(*cfg.csv, csv.str());
        }
        return 0;
    });
}

int cmd_compare(const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const GrayImage img = read_pgm_file(cfg.input);
        const fs::path dir = output_dir(cfg);
        const std::string stem = cfg.input.stem().string();
        std::vector<MethodReport> reports;

        auto emit = [&](const MethodReport& r, const BinaryImage& bin) {
            const fs::path path = dir / (stem + "_" + r.method + ".pgm");
            write_pgm_file(path, bin);
            out << r.method << ": " << path.string() << '\n';
            reports.push_back(r);
            if (!cfg.timing)
                reports.back().elapsed_s = 0.0;
        };

        {
            std::optional<BinaryImage> bin;
            const double elapsed = time_run([&] { bin = binarize_global(img, otsu_threshold(histogram(img))); });
            emit({"otsu_global", psnr(img, *bin), elapsed, {}, {}, {}, {}}, *bin);
        }
        {
            std::optional<BinaryImage> bin;
            const double elapsed = time_run([&] { bin = niblack_binarize(img, {cfg.window, cfg.k}); });
            emit({"niblack", psnr(img, *bin), elapsed, {}, {}, {}, {}}, *bin);
        }
        for (const auto choice : {MethodChoice::otsu, MethodChoice::adcdf}) {
            CliConfig c = cfg;
            c.method = choice;
            const LabtConfig lc = labt_config(c);
            const std::string name = "labt_" + method_name(lc.method);
            if (cfg.multiscan) {
                std::optional<MultiscanResult> ms;
                const double elapsed = time_run([&] { ms = run_multiscan(img, lc); });
                MethodReport r{name + "_multiscan", psnr(img, ms->combined), elapsed, 0, 0, {}, 0L};
                for (std::size_t i = 0; i < ms->runs.size(); ++i) {
                    *r.out_of_range_count += ms->runs[i].out_of_range_count;
                    *r.non_overlap_count += ms->runs[i].non_overlap_count;
                    *r.continuity_violations +=
                        continuity_violations(ms->runs[i], orient(img, static_cast<ScanOrientation>(i)));
                }
                emit(r, ms->combined);
            } else {
                std::optional<LabtResult> res;
                const double elapsed = time_run([&] { res = run_labt(img, lc); });
                emit(labt_report(name, img, *res, elapsed), res->binary);
            }
        }

        const fs::path csv_path = cfg.csv ? *cfg.csv : dir / (stem + "_compare.csv");
        std::ostringstream csv;
        write_method_csv(csv, reports);
        write_text(csv_path, csv.str());
        out << "report: " << csv_path.string() << '\n';
        return 0;
    });
}

int cmd_sweep(const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        std::vector<fs::path> inputs;
        if (fs::is_directory(cfg.input)) {
            for (const auto& entry : fs::directory_iterator(cfg.input)) {
                auto ext = entry.path().extension().string();
                std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
                if (entry.is_regular_file() && ext == ".pgm")
                    inputs.push_back(entry.path());
            }
            std::sort(inputs.begin(), inputs.end());
            if (inputs.empty())
                throw std::runtime_error("no .pgm files in " + cfg.input.string());
        } else {
            inputs.push_back(cfg.input);
        }
        if (cfg.sizes.empty())
            throw std::invalid_argument("sweep needs at least one block size");

        const LabtConfig lc = labt_config(cfg);
        std::vector<std::string> names;
        std::vector<std::vector<SweepRow>> rows;
        for (const auto& path : inputs) {
            const GrayImage img = read_pgm_file(path);
            names.push_back(path.filename().string());
            rows.push_back(sweep(img, lc, cfg.sizes));
        }

        const fs::path dir = output_dir(cfg);
        const fs::path per_image = cfg.csv ? *cfg.csv : dir / "sweep.csv";
        const fs::path averaged = per_image.parent_path() / (per_image.stem().string() + "_avg.csv");

        std::ostringstream a;
        write_sweep_csv(a, names, rows);
        write_text(per_image, a.str());
        std::ostringstream b;
        write_sweep_average_csv(b, average_sweeps(rows));
        write_text(averaged, b.str());

        out << "images: " << inputs.size() << '\n'
            << "per-image: " << per_image.string() << '\n'
            << "averaged: " << averaged.string() << '\n';
        return 0;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Locally adaptive block thresholding with continuity constraints", "labt"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string block = "auto";
    const std::map<std::string, MethodChoice> methods{{"otsu", MethodChoice::otsu},
                                                      {"adcdf", MethodChoice::adcdf},
                                                      {"meank", MethodChoice::meank},
                                                      {"niblack", MethodChoice::niblack}};
    const std::map<std::string, ContinuityMode> modes{{"strict", ContinuityMode::strict},
                                                      {"paper", ContinuityMode::paper}};

    auto add_common = [&](CLI::App* sub, bool output_required) {
        sub->add_option("input", cfg.input, "Input PGM (sweep: file or directory)")->required();
        auto* o = sub->add_option("output", cfg.output,
                                  output_required ? "Output PGM" : "Output directory (default .)");
        if (output_required)
            o->required();
        sub->add_option("--method", cfg.method, "Thresholding method")
            ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
        sub->add_option("--k", cfg.k, "k for meank and niblack");
        sub->add_option("--rho", cfg.rho, "CDF area fraction for adcdf")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--window", cfg.window, "Niblack window (odd)");
        sub->add_option("--block", block, "Block size WxH, N or auto");
        sub->add_option("--mode", cfg.mode, "Continuity mode")
            ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
        sub->add_flag("--multiscan", cfg.multiscan, "OR the identity, vertical-flip and horizontal-flip scans");
        sub->add_flag("!--no-global-seed", cfg.seed_global, "Seed the first block with its own threshold");
        sub->add_option("--csv", cfg.csv, "CSV report path");
        sub->add_flag("!--no-timing", cfg.timing, "Write 0 for elapsed time");
    };

    auto* binarize = app.add_subcommand("binarize", "Binarize one image");
    add_common(binarize, true);
    auto* compare = app.add_subcommand("compare", "Compare global Otsu, Niblack and LABT");
    add_common(compare, false);
    auto* sweep_cmd = app.add_subcommand("sweep", "Range statistics over block sizes");
    add_common(sweep_cmd, false);
    sweep_cmd->add_option("--sizes", cfg.sizes, "Comma-separated block sizes")->delimiter(',');

    try {
        app.parse(argc, argv);
        cfg.block = parse_block(block);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const std::exception& e) {
        err << "labt: " << e.what() << '\n';
        return 2;
    }

    if (binarize->parsed()) {
        cfg.command = Command::binarize;
        return cmd_binarize(cfg, out, err);
    }
    if (compare->parsed()) {
        cfg.command = Command::compare;
        return cmd_compare(cfg, out, err);
    }
    cfg.command = Command::sweep;
    return cmd_sweep(cfg, out, err);
}

} // namespace labt::cli
