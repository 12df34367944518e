// gpbtheta: command-line front end for the GPB theta-divisor engine.
//
// Exit codes: 0 success, 1 an invariant was violated (the offending record is
// printed), 2 usage, input or configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <gpbtheta/experiment.hpp>
#include <gpbtheta/gpbtheta.hpp>
#include <gpbtheta/serialization.hpp>

using namespace gpbtheta;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// A single JSON document or a JSON-lines stream.
std::vector<json> read_documents(const std::string& path) {
    const std::string text = slurp(path);
    if (auto whole = json::parse(text, nullptr, false); !whole.is_discarded()) return {whole};
    std::vector<json> docs;
    std::istringstream lines(text);
    std::string line;
    for (std::size_t n = 1; std::getline(lines, line); ++n) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto doc = json::parse(line, nullptr, false);
        if (doc.is_discarded()) throw std::runtime_error(path + ":" + std::to_string(n) + ": malformed JSON");
        docs.push_back(std::move(doc));
    }
    return docs;
}

json read_one(const std::string& path) {
    auto docs = read_documents(path);
    if (docs.size() != 1) throw std::runtime_error("'" + path + "' must contain exactly one JSON document");
    return docs.front();
}

/// A report record wraps the GPB under "instance"; accept both shapes.
const json& gpb_document(const json& j) { return j.contains("instance") ? j.at("instance") : j; }

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void line(const json& j) { stream() << j.dump() << '\n'; }
    bool good() { return static_cast<bool>(stream().flush()); }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct Common {
    std::string field = "p:10007";
    std::uint64_t seed = 1;
    std::string genus = "2";
    std::string rank = "2";
    std::size_t count = 1;
    int max_twist = 1;
    int spectrum = 0;
    std::string mode = "exhaustive";
    int lambda_grid = 0;
    std::size_t samples = 2000;
    long long height = 0;
    std::string in, out, summary, cert, source, target, lambda;
    bool timings = false;
};

GenConfig gen_config(const Common& o) {
    GenConfig c;
    c.seed = o.seed;
    c.field = FieldSpec::parse(o.field);
    c.genus = IntRange::parse(o.genus);
    c.rank = IntRange::parse(o.rank);
    c.count = o.count;
    c.params.max_twist = o.max_twist;
    c.params.spectrum = o.spectrum;
    return c;
}

StabilityMode parse_mode(const std::string& m) {
    if (m == "exhaustive") return StabilityMode::exhaustive;
    if (m == "randomized") return StabilityMode::randomized;
    throw std::invalid_argument("mode must be exhaustive or randomized");
}

StabilityOptions stability_options(const Common& o) {
    StabilityOptions opt;
    opt.seed = o.seed;
    opt.samples = o.samples;
    if (o.height > 0) opt.domain.height = o.height;
    return opt;
}

int cmd_gen(const Common& o) {
    const GenConfig c = gen_config(o);
    Output out(o.out);
    with_field(c.field, [&](const auto& k) {
        check_gen_config(k, c);
        for (std::size_t id = 0; id < c.count; ++id) out.line(to_json(generate_instance(k, c, id)));
    });
    return out.good() ? kOk : kUsage;
}

int cmd_theta(const Common& o) {
    Output out(o.out);
    for (const json& doc : read_documents(o.in)) {
        const json& g = gpb_document(doc);
        with_field(field_of(g), [&](const auto& k) {
            const auto v = gpb_from_json(k, g);
            auto l = choose_theta_glue(v);
            if (!o.lambda.empty()) {
                l.lambda.clear();
                std::istringstream s(o.lambda);
                for (std::string item; std::getline(s, item, ',');) l.lambda.push_back(element_from_json(k, json(item)));
            }
            const auto homs = hom_space(theta_line(l, v.line()), v);
            out.line({{"schema", kSchema},
                      {"lambda", to_json(k, l.lambda)},
                      {"degree", l.degree},
                      {"hom_dim", homs.dimension},
                      {"product_value", to_json(k, product_theta(v).expanded.eval(l.lambda))}});
        });
    }
    return out.good() ? kOk : kUsage;
}

int cmd_hom(const Common& o) {
    // "trivial" on either side means the trivial GPB on the other side's line.
    if (o.source == "trivial" && o.target == "trivial") throw std::invalid_argument("at most one side may be 'trivial'");
    const json ref = gpb_document(read_one(o.source == "trivial" ? o.target : o.source));
    Output out(o.out);
    with_field(field_of(ref), [&](const auto& k) {
        const auto line_of = gpb_from_json(k, ref).line();
        auto load = [&](const std::string& path) {
            return path == "trivial" ? std::decay_t<decltype(gpb_from_json(k, ref))>::trivial(line_of)
                                     : gpb_from_json(k, gpb_document(read_one(path)));
        };
        const auto w = load(o.source);
        const auto v = load(o.target);
        const auto homs = hom_space(w, v);
        json basis = json::array();
        for (const auto& f : homs.basis) basis.push_back(to_json(f.underlying));
        out.line({{"schema", kSchema}, {"dim", homs.dimension}, {"basis", std::move(basis)}});
    });
    return out.good() ? kOk : kUsage;
}

int cmd_stab(const Common& o) {
    Output out(o.out);
    const StabilityMode mode = parse_mode(o.mode);
    for (const json& doc : read_documents(o.in)) {
        const json& g = gpb_document(doc);
        with_field(field_of(g), [&](const auto& k) {
            const auto v = gpb_from_json(k, g);
            json j = to_json(is_semistable(v, mode, stability_options(o)));
            j["schema"] = kSchema;
            j["slope"] = to_json(gpb_slope(v));
            out.line(j);
        });
    }
    return out.good() ? kOk : kUsage;
}

int cmd_verify(const Common& o) {
    const json g = gpb_document(read_one(o.in));
    const json c = read_one(o.cert);
    Output out(o.out);
    with_field(field_of(g), [&](const auto& k) {
        const auto v = gpb_from_json(k, g);
        const json& cj = c.contains("witness") ? c.at("witness") : c;
        if (cj.is_null()) throw std::invalid_argument("document carries no certificate");
        const auto cert = certificate_from_json(k, cj);
        const auto status = check_certificate(cert, v);  // throws CertificateError when malformed
        const char* names[] = {"destabilizing", "boundary", "below"};
        out.line({{"schema", kSchema},
                  {"status", names[static_cast<int>(status)]},
                  {"destabilizing", verify_destabilizer(cert, v)},
                  {"ambient_slope", to_json(gpb_slope(v))},
                  {"slope", to_json(cert.claimed_slope)}});
    });
    return out.good() ? kOk : kUsage;
}

int cmd_descend(const Common& o) {
    Output out(o.out);
    const StabilityMode mode = parse_mode(o.mode);
    for (const json& doc : read_documents(o.in)) {
        const json& g = gpb_document(doc);
        with_field(field_of(g), [&](const auto& k) {
            const auto v = gpb_from_json(k, g);
            const CastelnuovoCurve x(v.line());
            json j = {{"schema", kSchema},
                      {"genus", x.arithmetic_genus()},
                      {"invariants", to_json(descended_invariants(v, x))},
                      {"h0", h0_on_curve(v)}};
            const bool theorem_shape =
                classify_type(v) == GpbType::B && v.bundle().degree() == 0 && v.genus() >= 2;
            if (theorem_shape) {
                const auto verdict = is_semistable(v, v.rank() <= 2 ? mode : StabilityMode::randomized,
                                                   stability_options(o));
                j["stability"] = to_json(verdict);
                if (!verdict.unstable()) j["theta"] = to_json(theta_on_curve(v, x, verdict), v);
            }
            out.line(j);
        });
    }
    return out.good() ? kOk : kUsage;
}

int cmd_experiment(const Common& o) {
    ExperimentConfig c;
    c.gen = gen_config(o);
    c.exhaustive = parse_mode(o.mode) == StabilityMode::exhaustive;
    c.lambda_grid = o.lambda_grid;
    c.stability_samples = o.samples;
    c.timings = o.timings;
    std::unique_ptr<Output> report = o.out.empty() ? nullptr : std::make_unique<Output>(o.out);
    ExperimentResult r = with_field(c.gen.field, [&](const auto& k) {
        return run_experiment(k, c, report ? &report->stream() : nullptr);
    });
    if (report && !report->good()) {
        r.summary["partial"] = true;
        r.summary["result"] = "ERROR";
        r.errored = true;
    }
    if (!o.summary.empty()) {
        Output s(o.summary);
        s.line(r.summary);
        if (!s.good()) r.errored = true;
    }
    std::cout << r.summary.dump(2) << '\n';
    if (r.failed) {
        std::cerr << "invariant violated on instances " << r.summary["failing_instances"].dump()
                  << (o.out.empty() ? "" : "; see the matching records in " + o.out) << '\n';
        return kViolation;
    }
    return r.errored ? kUsage : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized parabolic bundles on the line: Hom spaces, stability, theta divisors"};
    app.require_subcommand(1);
    Common o;

    auto field_opt = [&](CLI::App* s) { s->add_option("--field", o.field, "q or p:<prime>")->capture_default_str(); };
    auto family = [&](CLI::App* s) {
        s->add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
        field_opt(s);
        s->add_option("--genus", o.genus, "genus or range lo-hi")->capture_default_str();
        s->add_option("--rank", o.rank, "rank or range lo-hi")->capture_default_str();
        s->add_option("--count", o.count, "number of instances")->capture_default_str();
        s->add_option("--max-twist", o.max_twist, "bound on |d_j| in splitting types")->capture_default_str();
        s->add_option("--spectrum", o.spectrum, "glue eigenvalues drawn from {1..n} (0 = uniform glue)")
            ->capture_default_str();
        s->add_option("--out", o.out, "output path (default stdout)");
    };
    auto stab_opts = [&](CLI::App* s) {
        s->add_option("--mode", o.mode, "exhaustive or randomized")->capture_default_str();
        s->add_option("--samples", o.samples, "random line subsheaves per randomized search")->capture_default_str();
        s->add_option("--height", o.height, "coefficient box for exhaustive search over q");
    };

    auto* gen = app.add_subcommand("gen", "generate random degree-0 type-B GPBs (JSON lines)");
    family(gen);

    auto* theta = app.add_subcommand("theta", "choose the theta line and compute Hom(L, V)");
    theta->add_option("--in", o.in, "GPB document(s), '-' for stdin")->required();
    theta->add_option("--lambda", o.lambda, "comma-separated gluing scalars overriding the constructed ones");
    theta->add_option("--out", o.out, "output path");

    auto* hom = app.add_subcommand("hom", "Hom space between two GPBs on the same marked line");
    hom->add_option("--source", o.source, "source GPB file or 'trivial'")->required();
    hom->add_option("--target", o.target, "target GPB file or 'trivial'")->required();
    hom->add_option("--out", o.out, "output path");

    auto* stab = app.add_subcommand("stab", "semistability verdict with certificate");
    stab->add_option("--in", o.in, "GPB document(s)")->required();
    stab->add_option("--seed", o.seed, "seed for randomized search")->capture_default_str();
    stab_opts(stab);
    stab->add_option("--out", o.out, "output path");

    auto* verify = app.add_subcommand("verify", "re-check a destabilizer certificate against a GPB");
    verify->add_option("--in", o.in, "GPB document")->required();
    verify->add_option("--cert", o.cert, "certificate, or a stab verdict carrying a witness")->required();
    verify->add_option("--out", o.out, "output path");

    auto* descend = app.add_subcommand("descend", "invariants on the nodal curve and the theta transcript");
    descend->add_option("--in", o.in, "GPB document(s)")->required();
    descend->add_option("--seed", o.seed, "seed for randomized search")->capture_default_str();
    stab_opts(descend);
    descend->add_option("--out", o.out, "output path");

    auto* exp = app.add_subcommand("experiment", "batch theorem checks; JSON-lines report plus summary");
    family(exp);
    stab_opts(exp);
    exp->add_option("--lambda-grid", o.lambda_grid, "grid side n for lambda in {1..n}^g (0 = off)")
        ->capture_default_str();
    exp->add_option("--summary", o.summary, "also write the summary JSON here");
    exp->add_flag("--timings", o.timings, "record elapsed time per instance (breaks byte-identical reports)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) return cmd_gen(o);
        if (*theta) return cmd_theta(o);
        if (*hom) return cmd_hom(o);
        if (*stab) return cmd_stab(o);
        if (*verify) return cmd_verify(o);
        if (*descend) return cmd_descend(o);
        if (*exp) return cmd_experiment(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
