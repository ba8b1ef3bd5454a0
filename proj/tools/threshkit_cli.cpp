// threshkit command-line front end.
//
//   threshkit threshold --mode iatm -i scene.pgm -o out.pgm [--truth mask.pgm]
//   threshkit gen 64 64 --cell 8 --ramp 100 -o scene.pgm --mask mask.pgm
//   threshkit evaluate -i out.pgm --truth mask.pgm [--csv]
//   threshkit integral-dump -i scene.pgm [-o table.csv]
//   threshkit histogram -i photo.ppm --bins 8 [-o hist.csv]
//
// Exit status: 0 ok, 1 I/O failure, 2 invalid parameters, 3 metric
// preconditions unmet.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include <threshkit/threshkit.hpp>

namespace fs = std::filesystem;
using namespace threshkit;

namespace
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_io = 1,
    exit_params = 2,
    exit_metrics = 3,
};

struct IoError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct ParamError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw IoError("cannot open " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Writes next to the target and renames, so a failed run never leaves a
// partial file behind.
void write_file_atomic(const std::string& path, std::string_view data)
{
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(std::random_device{}());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
        {
            throw IoError("cannot write " + tmp.string());
        }
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        out.flush();
        if (!out)
        {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write failed for " + path);
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
    {
        fs::remove(tmp, ec);
        throw IoError("cannot rename onto " + path + ": " + ec.message());
    }
}

void write_file_atomic(const std::string& path, const std::vector<std::uint8_t>& data)
{
    write_file_atomic(path, std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
}

AnyImage load_image(const std::string& path)
{
    const auto bytes = read_file(path);
    try
    {
        return load_pnm(bytes);
    }
    catch (const PnmError& e)
    {
        throw IoError(path + ": " + e.what());
    }
}

BinaryImage load_mask(const std::string& path)
{
    return as_binary(as_gray(load_image(path)));
}

Rgb parse_rgb(const std::string& text)
{
    std::istringstream in(text);
    int c[3];
    char sep1 = 0, sep2 = 0;
    if (!(in >> c[0] >> sep1 >> c[1] >> sep2 >> c[2]) || sep1 != ',' || sep2 != ',' || !in.eof())
    {
        throw ParamError("--ref expects R,G,B, got '" + text + "'");
    }
    for (int v : c)
    {
        if (v < 0 || v > 255)
        {
            throw ParamError("--ref channels must lie in [0,255]");
        }
    }
    return Rgb{static_cast<std::uint8_t>(c[0]), static_cast<std::uint8_t>(c[1]), static_cast<std::uint8_t>(c[2])};
}

struct Report
{
    Confusion confusion;
    double fg_ratio = 0.0;
    ContourStats contour;
};

Report evaluate(const BinaryImage& classified, const BinaryImage& truth)
{
    if (classified.width() != truth.width() || classified.height() != truth.height())
    {
        throw ParamError("classified and truth images differ in size");
    }
    Report r;
    r.confusion = pixel_accuracy(classified, truth);
    r.fg_ratio = foreground_ratio(classified);
    r.contour = contour_distance(classified, truth);
    return r;
}

void print_report(const Report& r, bool csv)
{
    const auto& c = r.confusion;
    if (csv)
    {
        fmt::print("accuracy,tp,tn,fp,fn,foreground_ratio,contour_mean,contour_std,contour_max\n");
        fmt::print("{:.6f},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n", c.accuracy(), c.tp, c.tn, c.fp, c.fn,
                   r.fg_ratio, r.contour.mean_distance, r.contour.std_distance, r.contour.max_distance);
        return;
    }
    fmt::print("accuracy: {:.6f}\n", c.accuracy());
    fmt::print("tp: {}\ntn: {}\nfp: {}\nfn: {}\n", c.tp, c.tn, c.fp, c.fn);
    fmt::print("foreground_ratio: {:.6f}\n", r.fg_ratio);
    fmt::print("contour_mean: {:.6f}\ncontour_std: {:.6f}\ncontour_max: {:.6f}\n", r.contour.mean_distance,
               r.contour.std_distance, r.contour.max_distance);
}

struct ThresholdOptions
{
    std::string mode = "iatm";
    std::string input;
    std::string output;
    std::optional<int> t;
    std::optional<int> t1;
    std::optional<int> t2;
    double epsilon = default_peak_epsilon;
    std::optional<std::string> ref;
    std::optional<double> radius;
    std::optional<std::size_t> span;
    std::optional<std::size_t> window;
    double percent = AdaptiveParams::default_percent;
    std::size_t pixel_window = IatmParams::default_pixel_window;
    std::size_t threshold_window = IatmParams::default_threshold_window;
    double sensitivity = IatmParams::default_sensitivity;
    std::string trace;
    std::string truth;
    bool csv = false;
};

template <typename T>
T require(const std::optional<T>& v, const char* flag, const std::string& mode)
{
    if (!v)
    {
        throw ParamError(std::string("mode ") + mode + " requires " + flag);
    }
    return *v;
}

int run_threshold(const ThresholdOptions& o)
{
    const auto input = load_image(o.input);
    const GrayImage gray = as_gray(input);

    std::optional<BinaryImage> result;
    std::string trace_csv;

    if (o.mode == "fixed")
    {
        const int t = require(o.t, "--t", o.mode);
        fmt::print("# threshkit threshold mode=fixed t={}\n", t);
        result = threshold_fixed(gray, t);
    }
    else if (o.mode == "band")
    {
        const BandThreshold band(require(o.t1, "--t1", o.mode), require(o.t2, "--t2", o.mode));
        fmt::print("# threshkit threshold mode=band t1={} t2={}\n", band.t1(), band.t2());
        result = threshold_band(gray, band);
    }
    else if (o.mode == "iterative")
    {
        if (!(o.epsilon > 0.0))
        {
            throw ParamError("--epsilon must be positive");
        }
        const double t = iterative_peak_threshold(gray, o.epsilon);
        fmt::print("# threshkit threshold mode=iterative epsilon={} threshold={:.6f}\n", o.epsilon, t);
        result = threshold_at(gray, t);
    }
    else if (o.mode == "color-sphere")
    {
        const ColorSphere sphere(parse_rgb(require(o.ref, "--ref", o.mode)), require(o.radius, "--radius", o.mode));
        const auto ref = sphere.reference();
        fmt::print("# threshkit threshold mode=color-sphere ref={},{},{} radius={}\n", ref.r, ref.g, ref.b,
                   sphere.radius());
        const RgbImage* rgb = std::get_if<RgbImage>(&input);
        result = color_sphere_threshold(rgb ? *rgb : gray_to_rgb(gray), sphere);
    }
    else if (o.mode == "moving")
    {
        const std::size_t span = o.span.value_or(AdaptiveParams::default_window(gray.width()));
        if (span == 0)
        {
            throw ParamError("--span must be at least 1");
        }
        check_percent(o.percent);
        fmt::print("# threshkit threshold mode=moving span={} percent={}\n", span, o.percent);
        result = moving_average_threshold(gray, span, o.percent);
    }
    else if (o.mode == "bradley")
    {
        const AdaptiveParams params(o.window.value_or(AdaptiveParams::default_window(gray.width())), o.percent);
        fmt::print("# threshkit threshold mode=bradley window={} percent={}\n", params.window(), params.percent());
        result = bradley_threshold(gray, params);
    }
    else if (o.mode == "iatm")
    {
        const IatmParams params(o.pixel_window, o.threshold_window, o.sensitivity);
        fmt::print("# threshkit threshold mode=iatm pixel_window={} threshold_window={} sensitivity={}\n",
                   params.pixel_window(), params.threshold_window(), params.sensitivity());
        auto r = iatm_run(gray, params, !o.trace.empty());
        if (!o.trace.empty())
        {
            trace_csv = "x,y,I,T_L,A_D,used_global,label\n";
            for (std::size_t i = 0; i < r.trace.size(); ++i)
            {
                const auto& t = r.trace[i];
                trace_csv += fmt::format("{},{},{:.6f},{:.6f},{:.6f},{},{}\n", i % gray.width(), i / gray.width(),
                                         t.brightness, t.local_threshold, t.abs_diff, t.used_global ? 1 : 0, t.label);
            }
        }
        result = std::move(r.labels);
    }
    else
    {
        throw ParamError("unknown mode '" + o.mode + "'");
    }

    std::optional<Report> report;
    if (!o.truth.empty())
    {
        report = evaluate(*result, load_mask(o.truth));
    }

    write_file_atomic(o.output, save_pnm(*result));
    if (!trace_csv.empty())
    {
        write_file_atomic(o.trace, trace_csv);
    }
    if (report)
    {
        print_report(*report, o.csv);
    }
    return exit_ok;
}

struct GenOptions
{
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t cell = 8;
    int lo = 0;
    int hi = 200;
    int ramp = 0;
    std::string output;
    std::string mask;
};

int run_gen(const GenOptions& o)
{
    CheckerboardSpec spec{o.width, o.height, o.cell, o.lo, o.hi, o.ramp};
    Scene scene = [&] {
        try
        {
            return gen_gradient_checkerboard(spec);
        }
        catch (const std::invalid_argument& e)
        {
            throw ParamError(e.what());
        }
    }();
    write_file_atomic(o.output, save_pnm(scene.image));
    write_file_atomic(o.mask, save_pnm(scene.truth));
    return exit_ok;
}

std::string integral_csv(const IntegralImage& itg)
{
    std::string out;
    for (std::size_t y = 0; y < itg.height(); ++y)
    {
        const auto row = itg.row(y);
        for (std::size_t x = 0; x < row.size(); ++x)
        {
            out += fmt::format("{}{}", x ? "," : "", row[x]);
        }
        out += '\n';
    }
    return out;
}

std::string histogram_csv(const ColorHistogram& hist)
{
    std::string out = "r_bin,g_bin,b_bin,count\n";
    hist.for_each_nonempty([&](std::size_t r, std::size_t g, std::size_t b, std::uint64_t n) {
        out += fmt::format("{},{},{},{}\n", r, g, b, n);
    });
    return out;
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty())
    {
        fmt::print("{}", text);
    }
    else
    {
        write_file_atomic(path, text);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"threshkit: global, color and adaptive image binarization"};
    app.require_subcommand(1);

    ThresholdOptions th;
    auto* threshold = app.add_subcommand("threshold", "Binarize a PNM image");
    threshold->add_option("--mode", th.mode, "fixed | band | iterative | color-sphere | moving | bradley | iatm")
        ->capture_default_str()
        ->check(CLI::IsMember({"fixed", "band", "iterative", "color-sphere", "moving", "bradley", "iatm"}));
    threshold->add_option("-i,--input", th.input, "Input PGM/PPM")->required();
    threshold->add_option("-o,--output", th.output, "Output PGM (0/255)")->required();
    threshold->add_option("--t", th.t, "fixed: foreground iff pixel >= t");
    threshold->add_option("--t1", th.t1, "band: lower bound (inclusive)");
    threshold->add_option("--t2", th.t2, "band: upper bound (inclusive)");
    threshold->add_option("--epsilon", th.epsilon, "iterative: convergence tolerance")->capture_default_str();
    threshold->add_option("--ref", th.ref, "color-sphere: reference color R,G,B");
    threshold->add_option("--radius", th.radius, "color-sphere: sphere radius");
    threshold->add_option("--span", th.span, "moving: averaging span (default: bradley default window)");
    threshold->add_option("--window", th.window, "bradley: odd window side (default: largest odd <= max(3, width/8))");
    threshold->add_option("--percent", th.percent, "moving/bradley: percent below local mean")->capture_default_str();
    threshold->add_option("--pixel-window", th.pixel_window, "iatm: odd pixel window side")->capture_default_str();
    threshold->add_option("--threshold-window", th.threshold_window, "iatm: odd threshold window side")
        ->capture_default_str();
    threshold->add_option("--sensitivity", th.sensitivity, "iatm: minimum |I - T_L| for a local decision")
        ->capture_default_str();
    threshold->add_option("--trace", th.trace, "iatm: per-pixel CSV trace path");
    threshold->add_option("--truth", th.truth, "Ground-truth mask; prints an evaluation report");
    threshold->add_flag("--csv", th.csv, "Report as CSV");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a gradient checkerboard scene and its truth mask");
    gen_cmd->add_option("width", gen.width)->required();
    gen_cmd->add_option("height", gen.height)->required();
    gen_cmd->add_option("--cell", gen.cell, "Cell side")->capture_default_str();
    gen_cmd->add_option("--lo", gen.lo, "Dark cell intensity")->capture_default_str();
    gen_cmd->add_option("--hi", gen.hi, "Bright cell intensity")->capture_default_str();
    gen_cmd->add_option("--ramp", gen.ramp, "Left-to-right brightness ramp")->capture_default_str();
    gen_cmd->add_option("-o,--output", gen.output, "Scene PGM")->required();
    gen_cmd->add_option("--mask", gen.mask, "Truth mask PGM")->required();

    std::string eval_input, eval_truth;
    bool eval_csv = false;
    auto* eval_cmd = app.add_subcommand("evaluate", "Compare a binary image against a truth mask");
    eval_cmd->add_option("-i,--input", eval_input, "Classified PGM (nonzero = foreground)")->required();
    eval_cmd->add_option("--truth", eval_truth, "Truth mask PGM")->required();
    eval_cmd->add_flag("--csv", eval_csv, "Report as CSV");

    std::string dump_input, dump_output;
    auto* dump_cmd = app.add_subcommand("integral-dump", "Print the integral image as CSV");
    dump_cmd->add_option("-i,--input", dump_input, "Input PGM/PPM")->required();
    dump_cmd->add_option("-o,--output", dump_output, "CSV path (default: stdout)");

    std::string hist_input, hist_output;
    std::size_t hist_bins = 8;
    auto* hist_cmd = app.add_subcommand("histogram", "Print the RGB color histogram as CSV");
    hist_cmd->add_option("-i,--input", hist_input, "Input PGM/PPM")->required();
    hist_cmd->add_option("--bins", hist_bins, "Bins per channel (divides 256)")->capture_default_str();
    hist_cmd->add_option("-o,--output", hist_output, "CSV path (default: stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return exit_params;
    }

    try
    {
        if (*threshold)
        {
            return run_threshold(th);
        }
        if (*gen_cmd)
        {
            return run_gen(gen);
        }
        if (*eval_cmd)
        {
            const auto report = evaluate(load_mask(eval_input), load_mask(eval_truth));
            print_report(report, eval_csv);
            return exit_ok;
        }
        if (*dump_cmd)
        {
            emit(dump_output, integral_csv(IntegralImage(as_gray(load_image(dump_input)))));
            return exit_ok;
        }
        if (*hist_cmd)
        {
            const auto input = load_image(hist_input);
            const RgbImage* rgb = std::get_if<RgbImage>(&input);
            const ColorHistogram hist(hist_bins); // validates before pixel work
            emit(hist_output, histogram_csv(color_histogram(rgb ? *rgb : gray_to_rgb(std::get<GrayImage>(input)),
                                                            hist.bins_per_channel())));
            return exit_ok;
        }
    }
    catch (const IoError& e)
    {
        std::cerr << "threshkit: " << e.what() << '\n';
        return exit_io;
    }
    catch (const ParamError& e)
    {
        std::cerr << "threshkit: " << e.what() << '\n';
        return exit_params;
    }
    catch (const NoContourError& e)
    {
        std::cerr << "threshkit: " << e.what() << '\n';
        return exit_metrics;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "threshkit: " << e.what() << '\n';
        return exit_params;
    }
    catch (const std::exception& e)
    {
        std::cerr << "threshkit: " << e.what() << '\n';
        return exit_io;
    }
    return exit_params;
}
