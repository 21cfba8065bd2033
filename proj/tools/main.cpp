#include <CLI11.hpp>
#include <json.hpp>

#include <quadring/certify.hpp>
#include <quadring/dhstep.hpp>
#include <quadring/euclid.hpp>
#include <quadring/format.hpp>
#include <quadring/normsolve.hpp>
#include <quadring/zarith.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace quadring;
using ordered_json = nlohmann::ordered_json;

struct CliConfig {
    bool json = false;
    bool unit_reduce = false;
    std::optional<std::string> table_cache;
    std::optional<long long> search_cap;
};

SearchLimits limits_from(const CliConfig& cfg) {
    SearchLimits lim;
    if (cfg.search_cap) lim.v_cap = *cfg.search_cap;
    return lim;
}

// Cached table when a path is configured: load-and-validate if present,
// build-and-save otherwise.
PrimeTable obtain_table(const CliConfig& cfg, const FieldParams& field) {
    if (cfg.table_cache) {
        std::ifstream in(*cfg.table_cache);
        if (in) {
            std::stringstream buf;
            buf << in.rdbuf();
            PrimeTable t = prime_table_from_json(buf.str());
            if (!(t.field == field))
                fail(errc::table_mismatch, "cached table belongs to a different field");
            return t;
        }
        PrimeTable t = build_prime_table(field, limits_from(cfg));
        std::ofstream out(*cfg.table_cache);
        out << to_json(t) << '\n';
        return t;
    }
    return build_prime_table(field, limits_from(cfg));
}

PrimeTable require_complete(PrimeTable t) {
    if (!t.complete())
        fail(errc::table_incomplete,
             "field not certified; missing witness for p = " +
                 std::to_string(*t.first_missing()));
    return t;
}

std::string trace_string(const std::vector<StepCase>& trace) {
    std::string s;
    for (StepCase c : trace) {
        if (!s.empty()) s += ",";
        s += step_case_name(c);
    }
    return s;
}

std::string certify_line(const Certificate& cert) {
    if (cert.status == CertStatus::certified_pid) {
        if (cert.corollary_path == CorollaryPath::imaginary_all_inert)
            return "CertifiedPID (imaginary, all small primes inert)";
        return "CertifiedPID (witness table complete)";
    }
    return "Inconclusive at p=" + std::to_string(*cert.failing_prime);
}

int run(int argc, char** argv) {
    CliConfig cfg;
    long long jobs = 1;

    CLI::App app{"Exact arithmetic and PID certification for quadratic integer rings"};
    app.require_subcommand(1);
    app.add_flag("--json", cfg.json, "emit JSON instead of text");
    app.add_flag("--reduce-unit", cfg.unit_reduce, "canonicalize unit multiples of results");
    std::string cache_path;
    auto* cache_opt = app.add_option("--table", cache_path, "prime table cache file");
    long long cap_value = 0;
    auto* cap_opt = app.add_option("--search-cap", cap_value, "norm search bound override")
                        ->check(CLI::PositiveNumber);
    app.add_option("--jobs", jobs, "certify --range worker threads")->check(CLI::PositiveNumber);

    long long m = 0;
    std::string elem_str, a_str, b_str;

    auto* norm_cmd = app.add_subcommand("norm", "norm of an element");
    norm_cmd->add_option("-m", m, "squarefree field parameter")->required();
    norm_cmd->add_option("ELEM", elem_str, "element")->required();

    auto* gcd_cmd = app.add_subcommand("gcd", "greatest common divisor with Bezout pair");
    gcd_cmd->add_option("-m", m, "squarefree field parameter")->required();
    gcd_cmd->add_option("A", a_str, "first element")->required();
    gcd_cmd->add_option("B", b_str, "second element")->required();

    auto* step_cmd = app.add_subcommand("step", "one descent step");
    step_cmd->add_option("-m", m, "squarefree field parameter")->required();
    step_cmd->add_option("A", a_str, "dividend")->required();
    step_cmd->add_option("B", b_str, "divisor")->required();

    long long p = 0;
    auto* pe_cmd = app.add_subcommand("prime-elem", "element of norm +-p");
    pe_cmd->add_option("-m", m, "squarefree field parameter")->required();
    pe_cmd->add_option("-p", p, "rational prime")->required();

    auto* cert_cmd = app.add_subcommand("certify", "principal ideal domain certificate");
    auto* cert_m = cert_cmd->add_option("-m", m, "squarefree field parameter");
    std::vector<long long> range;
    auto* cert_range = cert_cmd->add_option("--range", range, "inclusive range LO HI")
                           ->expected(2)
                           ->excludes(cert_m);

    auto* table_cmd = app.add_subcommand("table", "prime witness table");
    table_cmd->add_option("-m", m, "squarefree field parameter")->required();
    std::string save_path;
    auto* save_opt = table_cmd->add_option("--save", save_path, "write the table to a file");

    auto* cf_cmd = app.add_subcommand("cf", "continued fraction and fundamental unit");
    cf_cmd->add_option("-m", m, "squarefree field parameter, m > 1")->required();

    long long n_arg = 0;
    auto* sq_cmd = app.add_subcommand("sqrtmod", "square root modulo a prime");
    sq_cmd->add_option("-n", n_arg, "residue")->required();
    sq_cmd->add_option("-p", p, "odd prime modulus")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (*cache_opt) cfg.table_cache = cache_path;
    if (*cap_opt) cfg.search_cap = cap_value;

    if (*norm_cmd) {
        FieldParams field = field_params(m);
        QuadInt x = parse_quadint(elem_str, field);
        if (cfg.json) {
            ordered_json j{{"m", m}, {"element", render(x)}, {"norm", x.norm().get_str()}};
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << x.norm().get_str() << '\n';
        }
        return 0;
    }

    if (*gcd_cmd) {
        FieldParams field = field_params(m);
        PrimeTable table = require_complete(obtain_table(cfg, field));
        QuadInt a = parse_quadint(a_str, field);
        QuadInt b = parse_quadint(b_str, field);
        BezoutResult g = dh_gcd(a, b, table);
        if (cfg.unit_reduce) {
            QuadInt reduced = unit_reduce(g.gcd);
            QuadInt scale = exact_div(reduced, g.gcd);
            g.gcd = reduced;
            g.lambda = g.lambda * scale;
            g.mu = g.mu * scale;
        }
        if (cfg.json) {
            ordered_json j{{"m", m},
                           {"gcd", render(g.gcd)},
                           {"lambda", render(g.lambda)},
                           {"mu", render(g.mu)},
                           {"chain_length", g.chain_length}};
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "gcd = " << render(g.gcd) << '\n'
                      << "lambda = " << render(g.lambda) << '\n'
                      << "mu = " << render(g.mu) << '\n'
                      << "chain = " << g.chain_length << '\n';
        }
        return 0;
    }

    if (*step_cmd) {
        FieldParams field = field_params(m);
        PrimeTable table = require_complete(obtain_table(cfg, field));
        QuadInt a = parse_quadint(a_str, field);
        QuadInt b = parse_quadint(b_str, field);
        StepResult st = dh_step(a, b, table);
        if (cfg.json) {
            ordered_json j{{"m", m},
                           {"gamma", render(st.gamma)},
                           {"delta", render(st.delta)},
                           {"rho", render(st.rho)},
                           {"trace", ordered_json::array()}};
            for (StepCase c : st.trace) j["trace"].push_back(step_case_name(c));
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "gamma = " << render(st.gamma) << '\n'
                      << "delta = " << render(st.delta) << '\n'
                      << "rho = " << render(st.rho) << '\n'
                      << "trace = " << trace_string(st.trace) << '\n';
        }
        return 0;
    }

    if (*pe_cmd) {
        FieldParams field = field_params(m);
        PrimeTable table = require_complete(obtain_table(cfg, field));
        QuadInt pi = prime_element(field, p, table);
        if (cfg.unit_reduce) pi = unit_reduce(pi);
        if (cfg.json) {
            ordered_json j{
                {"m", m}, {"p", p}, {"element", render(pi)}, {"norm", pi.norm().get_str()}};
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << render(pi) << '\n';
        }
        return 0;
    }

    if (*cert_cmd) {
        if (*cert_range) {
            auto certs = certify_range(range[0], range[1], limits_from(cfg), jobs);
            if (cfg.json) {
                ordered_json arr = ordered_json::array();
                for (const auto& c : certs) arr.push_back(ordered_json::parse(to_json(c)));
                std::cout << arr.dump(2) << '\n';
            } else {
                for (const auto& c : certs)
                    std::cout << "m=" << c.field.m << ": " << certify_line(c) << '\n';
            }
            return 0;
        }
        if (cert_m->count() == 0) {
            std::cerr << "certify needs -m or --range\n";
            return 2;
        }
        Certificate cert = pid_certify(m, limits_from(cfg));
        if (cfg.json)
            std::cout << to_json(cert) << '\n';
        else
            std::cout << certify_line(cert) << '\n';
        return cert.status == CertStatus::certified_pid ? 0 : 1;
    }

    if (*table_cmd) {
        FieldParams field = field_params(m);
        PrimeTable t = build_prime_table(field, limits_from(cfg));
        std::cout << to_json(t) << '\n';
        if (*save_opt) {
            std::ofstream out(save_path);
            out << to_json(t) << '\n';
        }
        if (!t.complete()) {
            std::cerr << "incomplete: no witness for p = " << *t.first_missing() << '\n';
            return 1;
        }
        return 0;
    }

    if (*cf_cmd) {
        FieldParams field = field_params(m);
        CfExpansion cf = cfrac_sqrt(m);
        FundUnit fu = fundamental_unit(field);
        if (cfg.json) {
            ordered_json j{{"m", m},
                           {"a0", cf.a0},
                           {"period", cf.period},
                           {"unit", render(fu.unit)},
                           {"unit_norm", fu.norm_sign}};
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "sqrt(" << m << ") = [" << cf.a0 << ";";
            for (size_t i = 0; i < cf.period.size(); ++i)
                std::cout << (i ? ", " : " ") << cf.period[i];
            std::cout << "]\n"
                      << "unit = " << render(fu.unit) << '\n'
                      << "norm = " << (fu.norm_sign > 0 ? "1" : "-1") << '\n';
        }
        return 0;
    }

    if (*sq_cmd) {
        auto root = sqrt_mod(mpz_class(static_cast<long>(n_arg)), p);
        if (cfg.json) {
            ordered_json j{{"n", n_arg}, {"p", p}, {"root", nullptr}};
            if (root) j["root"] = *root;
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << (root ? std::to_string(*root) : "none") << '\n';
        }
        return root ? 0 : 1;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const error& e) {
        std::cerr << e.what() << '\n';
        return e.code() == errc::no_square_root ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
}
