#include "cli.hpp"

#include "smf/errors.hpp"
#include "smf/montecarlo.hpp"
#include "smf/padic.hpp"
#include "smf/schneider_map.hpp"
#include "smf/spectrum.hpp"
#include "smf/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace smf::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Csv, Json };

struct RunConfig {
    std::string command;
    std::uint32_t p = 2;
    double q = 1.0;
    double beta = 2.0;
    double beta_min = 1.0;
    double beta_max = 10.0;
    int steps = 50;
    std::vector<double> q_list{-1.0, 0.0, 1.0, 2.0};
    std::string num = "0";
    std::string den = "1";
    int n = 20;
    int precision = -1;  // command-dependent default
    std::string mode = "digit_model";
    std::size_t samples = 1000;
    std::size_t orbit_length = 1000;
    std::uint64_t seed = mc::kDefaultSeed;
    Format format = Format::Csv;
    std::string output;
};

// JSON has no infinity; non-finite values become null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string csv_row(std::initializer_list<std::string> cells) {
    std::string row;
    for (const auto& c : cells) {
        if (!row.empty()) row += ',';
        row += c;
    }
    return row + '\n';
}

std::string spectrum_header() { return "q,beta,lambda,mean_digit,s_alpha,dimension\n"; }

std::string spectrum_csv(const spectrum::SpectrumPoint& pt) {
    return csv_row({format_number(pt.q), format_number(pt.beta), format_number(pt.lambda),
                    format_number(pt.mean_digit), format_number(pt.s_alpha),
                    format_number(pt.dimension)});
}

Json spectrum_json(const spectrum::SpectrumPoint& pt) {
    return Json{{"q", pt.q},
                {"beta", pt.beta},
                {"lambda", pt.lambda},
                {"mean_digit", pt.mean_digit},
                {"s_alpha", number(pt.s_alpha)},
                {"dimension", pt.dimension}};
}

std::string cmd_digits(const RunConfig& c) {
    const int precision = c.precision < 0 ? padic::kDefaultPrecision : c.precision;
    const auto x = padic::from_rational(mpz_class(c.num), mpz_class(c.den), c.p, precision);
    const auto seq = cf::digits(x, static_cast<std::size_t>(c.n));
    if (c.format == Format::Json) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < seq.pairs.size(); ++i)
            rows.push_back({{"i", i + 1},
                            {"a", seq.pairs[i].a},
                            {"b", seq.pairs[i].b},
                            {"trusted", i < seq.trusted_count}});
        Json j{{"p", c.p},
               {"terminated", cf::to_string(seq.terminated)},
               {"trusted_count", seq.trusted_count},
               {"digits", rows}};
        return j.dump(2) + '\n';
    }
    std::string s = "i,a,b,trusted\n";
    for (std::size_t i = 0; i < seq.pairs.size(); ++i)
        s += csv_row({std::to_string(i + 1), std::to_string(seq.pairs[i].a),
                      std::to_string(seq.pairs[i].b), i < seq.trusted_count ? "1" : "0"});
    s += std::string("# terminated=") + cf::to_string(seq.terminated) + '\n';
    return s;
}

std::string cmd_dimension(const RunConfig& c) {
    const auto pt = spectrum::dimension(c.q, c.beta, c.p);
    if (c.format == Format::Json) return spectrum_json(pt).dump(2) + '\n';
    return spectrum_header() + spectrum_csv(pt);
}

std::string cmd_spectrum(const RunConfig& c) {
    if (!(c.beta_max > c.beta_min)) throw DomainError("--beta-max must exceed --beta-min");
    std::vector<double> betas(static_cast<std::size_t>(c.steps));
    for (int i = 0; i < c.steps; ++i)
        betas[i] = c.beta_min + (c.beta_max - c.beta_min) * i / (c.steps - 1);
    betas.back() = c.beta_max;
    const auto pts = spectrum::sweep(c.q, betas, c.p);
    if (c.format == Format::Json) {
        Json arr = Json::array();
        for (const auto& pt : pts) arr.push_back(spectrum_json(pt));
        return arr.dump(2) + '\n';
    }
    std::string s = spectrum_header();
    for (const auto& pt : pts) s += spectrum_csv(pt);
    return s;
}

std::string cmd_haar(const RunConfig& c) {
    if (c.q_list.empty()) throw DomainError("--q-list is empty");
    Json arr = Json::array();
    std::string s = "q,haar_mean,lambda,dimension\n";
    for (double q : c.q_list) {
        const double beta = spectrum::haar_mean(q, c.p);
        const auto pt = spectrum::dimension(q, beta, c.p);
        arr.push_back({{"q", q}, {"haar_mean", beta}, {"lambda", pt.lambda}, {"dimension", pt.dimension}});
        s += csv_row({format_number(q), format_number(beta), format_number(pt.lambda),
                      format_number(pt.dimension)});
    }
    return c.format == Format::Json ? arr.dump(2) + '\n' : s;
}

std::string cmd_montecarlo(const RunConfig& c) {
    const mc::Mode mode = c.mode == "orbit" ? mc::Mode::Orbit : mc::Mode::DigitModel;
    const int precision = c.precision < 0 ? mc::kDefaultOrbitPrecision : c.precision;
    const auto est = mc::estimate_mean(c.q, c.p, mode, c.samples, c.orbit_length, c.seed, precision);
    const double haar = spectrum::haar_mean(c.q, c.p);
    const double z = est.std_error > 0 ? (est.mean - haar) / est.std_error : NAN;
    if (c.format == Format::Json) {
        Json j{{"q", est.q},
               {"p", est.p},
               {"mode", mc::to_string(est.mode)},
               {"samples", est.samples},
               {"orbit_length", est.orbit_length},
               {"mean", est.mean},
               {"stderr", est.std_error},
               {"seed", est.seed},
               {"digits_used", est.digits_used},
               {"haar_mean", haar},
               {"z_score", number(z)}};
        return j.dump(2) + '\n';
    }
    return "q,p,mode,samples,orbit_length,mean,stderr,seed,digits_used,haar_mean,z_score\n" +
           csv_row({format_number(est.q), std::to_string(est.p), mc::to_string(est.mode),
                    std::to_string(est.samples), std::to_string(est.orbit_length),
                    format_number(est.mean), format_number(est.std_error), std::to_string(est.seed),
                    std::to_string(est.digits_used), format_number(haar), format_number(z)});
}

std::string cmd_validate(const RunConfig& c, bool& all_passed) {
    const auto results = validation::run_all();
    all_passed = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
    if (c.format == Format::Json) {
        Json arr = Json::array();
        for (const auto& r : results)
            arr.push_back({{"id", r.id},
                           {"name", r.name},
                           {"passed", r.passed},
                           {"worst", number(r.worst)},
                           {"tolerance", r.tolerance},
                           {"seconds", r.seconds},
                           {"time_limit", r.time_limit},
                           {"detail", r.detail}});
        Json j{{"passed", static_cast<long>(results.size()) - failed},
               {"failed", failed},
               {"checks", arr}};
        return j.dump(2) + '\n';
    }
    std::string s;
    for (const auto& r : results) s += validation::format_line(r) + '\n';
    s += "summary: passed=" + std::to_string(results.size() - failed) +
         " failed=" + std::to_string(failed) + '\n';
    return s;
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Power-mean spectra of p-adic continued fraction digits", "schneider-spectrum"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every command");

    const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};
    auto common = [&](CLI::App* sub) {
        sub->add_option("--p", c.p, "Prime")->check(CLI::PositiveNumber);
        sub->add_option("--format", c.format, "csv or json")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("--output", c.output, "Write here instead of standard output");
    };
    auto with_q = [&](CLI::App* sub) {
        sub->add_option("--q", c.q, "Power-mean exponent")->check(CLI::Number);
    };

    auto* digits = app.add_subcommand("digits", "Schneider digits of num/den");
    common(digits);
    digits->add_option("--num", c.num, "Numerator (integer)")->required();
    digits->add_option("--den", c.den, "Denominator (integer, not divisible by p)");
    digits->add_option("--n", c.n, "Maximum number of digit pairs")->check(CLI::Range(1, 1 << 20));
    digits->add_option("--precision", c.precision, "Base-p digits carried")->check(CLI::Range(1, 1 << 20));

    auto* dim = app.add_subcommand("dimension", "Dimension of one level set");
    common(dim);
    with_q(dim);
    dim->add_option("--beta", c.beta, "Target mean, >= 1")->required();

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Dimension over a grid of betas");
    common(spectrum_cmd);
    with_q(spectrum_cmd);
    spectrum_cmd->add_option("--beta-min", c.beta_min, "First grid point, >= 1");
    spectrum_cmd->add_option("--beta-max", c.beta_max, "Last grid point");
    spectrum_cmd->add_option("--steps", c.steps, "Grid points, >= 2")->check(CLI::Range(2, 1 << 20));

    auto* haar = app.add_subcommand("haar", "Almost-sure means under Haar measure");
    common(haar);
    haar->add_option("--q-list", c.q_list, "Comma-separated exponents")->delimiter(',');

    auto* montecarlo = app.add_subcommand("montecarlo", "Monte Carlo estimate of an almost-sure mean");
    common(montecarlo);
    with_q(montecarlo);
    montecarlo->add_option("--mode", c.mode, "orbit or digit_model")
        ->check(CLI::IsMember({"orbit", "digit_model"}));
    montecarlo->add_option("--samples", c.samples, "Independent samples")->check(CLI::Range(1, 1 << 30));
    montecarlo->add_option("--orbit-length", c.orbit_length, "Digits per sample")->check(CLI::Range(1, 1 << 30));
    montecarlo->add_option("--seed", c.seed, "RNG seed");
    montecarlo->add_option("--precision", c.precision, "Base-p digits per Haar sample (orbit mode)")
        ->check(CLI::Range(8, 1 << 20));

    auto* validate = app.add_subcommand("validate", "Run the acceptance checks and audits");
    validate->add_option("--format", c.format, "csv (text lines) or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    validate->add_option("--output", c.output, "Write here instead of standard output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    c.command = app.get_subcommands().front()->get_name();

    try {
        if (c.command != "validate") padic::require_prime(c.p);
        std::string text;
        int code = kExitOk;
        if (c.command == "digits") text = cmd_digits(c);
        else if (c.command == "dimension") text = cmd_dimension(c);
        else if (c.command == "spectrum") text = cmd_spectrum(c);
        else if (c.command == "haar") text = cmd_haar(c);
        else if (c.command == "montecarlo") text = cmd_montecarlo(c);
        else {
            bool ok = false;
            text = cmd_validate(c, ok);
            if (!ok) code = kExitNumerical;
        }
        if (c.output.empty()) {
            out << text;
        } else {
            std::ofstream file(c.output, std::ios::binary);
            if (!file) {
                err << "error: cannot open " << c.output << " for writing\n";
                return kExitUsage;
            }
            file << text;
        }
        return code;
    } catch (const DomainFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {  // malformed --num/--den
        err << "error: invalid integer argument\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace smf::cli
