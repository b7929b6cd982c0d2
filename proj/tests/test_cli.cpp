#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>

#include <doctest.h>

#include "hua/commands.hpp"
#include "hua/errors.hpp"

using namespace hua;

namespace {

RunConfig reference_config(double q = 0.5, int D = 3)
{
    RunConfig cfg;
    cfg.parameters.V0          = 15;
    cfg.parameters.b_h         = 1.61890;
    cfg.parameters.r_e         = 1;
    cfg.parameters.q           = q;
    cfg.parameters.mass_factor = 1;
    cfg.parameters.D           = D;
    return cfg;
}

double trapezoid(std::vector<double> const& x, std::vector<double> const& y)
{
    double s = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    }
    return s;
}

int run_tool(std::string const& args)
{
    std::string cmd = std::string(HUA_SPECTRA_BIN) + " " + args + " >/dev/null 2>&1";
    int status      = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("config parsing")
{
    std::istringstream in("# sample\n"
                          "V0 = 15\n"
                          "b_h=1.6189   # trailing comment\n"
                          "q = 0.5\n"
                          "D = 4\n"
                          "l_max = 2\n"
                          "n_r_max = all\n"
                          "modes = closed, numeric-pekeris\n"
                          "sweep = 0.2:0.9:8\n"
                          "format = json\n"
                          "force = true\n");
    auto cfg = parse_config(in);
    CHECK(cfg.parameters.V0 == 15);
    CHECK(cfg.parameters.b_h == 1.6189);
    CHECK(cfg.parameters.q == 0.5);
    CHECK(cfg.parameters.D == 4);
    CHECK(cfg.l_max == 2);
    CHECK_FALSE(cfg.n_r_max.has_value());
    CHECK(cfg.modes == std::set<Method>{Method::closed_form, Method::numeric_pekeris});
    REQUIRE(cfg.sweep.has_value());
    CHECK(cfg.sweep->q_start == 0.2);
    CHECK(cfg.sweep->q_end == 0.9);
    CHECK(cfg.sweep->steps == 8);
    CHECK(cfg.format == OutputFormat::json);
    CHECK(cfg.force);

    auto expect_line = [](std::string const& text, std::string const& marker) {
        std::istringstream s(text);
        try {
            parse_config(s);
            FAIL("expected ConfigError");
        } catch (ConfigError const& e) {
            CHECK(std::string(e.what()).find(marker) != std::string::npos);
        }
    };
    expect_line("V0 = 1\nbogus = 3\n", "line 2");
    expect_line("V0 = 1\n\nq = abc\n", "line 3");
    expect_line("V0\n", "line 1");
    expect_line("modes = closed,nonsense\n", "line 1");
    expect_line("sweep = 0.1:0.2\n", "line 1");
    expect_line("D = 3.5\n", "line 1");
}

TEST_CASE("report round trip")
{
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    std::bernoulli_distribution coin(0.5);

    std::vector<ReportRow> rows;
    for (int i = 0; i < 200; ++i) {
        ReportRow r;
        r.D   = 2 + i % 4;
        r.l   = i % 3;
        r.n_r = i % 5;
        r.q   = u(gen) * 1e-3;
        if (coin(gen)) r.E_closed = u(gen);
        if (coin(gen)) r.E_numeric_pekeris = u(gen) * 1e-200;
        if (coin(gen)) r.E_numeric_exact = std::nextafter(u(gen), 0.0);
        fill_derived(r);
        r.validity = coin(gen);
        if (i % 7 == 0) r.note = "level \"unbound\", skipped";
        rows.push_back(r);
    }

    std::stringstream csv;
    write_csv(rows, csv);
    CHECK(read_csv(csv) == rows);

    std::stringstream js;
    write_json(rows, js);
    CHECK(read_json(js) == rows);

    std::istringstream bad("D,l,n_r,q\n3,0,zero,0.5\n");
    CHECK_THROWS_AS(read_csv(bad), ConfigError);
}

TEST_CASE("derived columns")
{
    ReportRow r;
    r.E_closed          = 10.0;
    r.E_numeric_pekeris = 10.5;
    r.E_numeric_exact   = 11.0;
    fill_derived(r);
    CHECK(*r.rel_diff_closed_vs_pekeris == doctest::Approx(0.5 / 10.5));
    CHECK(*r.pekeris_error == doctest::Approx(0.5));

    ReportRow s;
    s.E_closed = 1.0;
    fill_derived(s);
    CHECK_FALSE(s.rel_diff_closed_vs_pekeris.has_value());
    CHECK_FALSE(s.pekeris_error.has_value());
}

TEST_CASE("spectrum rows")
{
    auto cfg  = reference_config(0.5, 3);
    cfg.l_max = 2;
    cfg.modes = {Method::closed_form, Method::numeric_pekeris, Method::numeric_exact};

    auto rows = spectrum_rows(cfg);
    auto pek  = pekeris_coefficients(cfg.parameters);
    std::size_t expected = 0;
    for (int l = 0; l <= 2; ++l) {
        expected += count_bound_states(l, cfg.parameters, pek);
    }
    CHECK(rows.size() == expected);
    int exact_levels = 0;
    for (auto const& r : rows) {
        REQUIRE(r.E_closed.has_value());
        REQUIRE(r.E_numeric_pekeris.has_value());
        CHECK(*r.rel_diff_closed_vs_pekeris <= 1e-6);
        CHECK(r.validity);
        CHECK(r.note.empty());
        /* the exact barrier can bind fewer levels than its Pekeris stand-in */
        if (r.E_numeric_exact) {
            ++exact_levels;
            CHECK(*r.pekeris_error == doctest::Approx(*r.E_numeric_exact - *r.E_numeric_pekeris));
        } else {
            CHECK_FALSE(r.pekeris_error.has_value());
        }
    }
    int exact_census = 0;
    for (int l = 0; l <= 2; ++l) {
        exact_census += static_cast<int>(solve_bound_states(cfg.parameters, l, CentrifugalMode::exact).levels.size());
    }
    CHECK(exact_levels == exact_census);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::pair(rows[i - 1].l, rows[i - 1].n_r) < std::pair(rows[i].l, rows[i].n_r));
    }

    cfg.n_r_max = 3;
    cfg.modes   = {Method::closed_form};
    rows        = spectrum_rows(cfg);
    CHECK(rows.size() == 12);
    int annotated = 0;
    for (auto const& r : rows) {
        annotated += r.note.empty() ? 0 : 1;
        CHECK(r.E_closed.has_value() != !r.note.empty());
    }
    CHECK(annotated > 0);

    auto weak  = reference_config(0.999);
    weak.modes = {Method::closed_form, Method::numeric_pekeris};
    CHECK(spectrum_rows(weak).empty());

    auto bad = reference_config(0.170066);
    CHECK_THROWS_AS(spectrum_rows(bad), ValidityError);
    bad.force = true;
    rows      = spectrum_rows(bad);
    REQUIRE_FALSE(rows.empty());
    for (auto const& r : rows) {
        CHECK_FALSE(r.validity);
    }
}

TEST_CASE("q sweep")
{
    auto cfg  = reference_config();
    cfg.sweep = SweepRange{0.1, 0.9, 9};
    auto rows = sweep_rows(cfg);
    REQUIRE_FALSE(rows.empty());

    double thr = validity_threshold(cfg.parameters);
    int outside = 0;
    for (auto const& r : rows) {
        if (r.q < thr) {
            ++outside;
            CHECK_FALSE(r.E_closed.has_value());
            CHECK_FALSE(r.note.empty());
        } else {
            CHECK(r.E_closed.has_value());
        }
    }
    CHECK(outside == 1); // q = 0.1 only
    for (std::size_t i = 1; i < rows.size(); ++i) {
        auto key = [](ReportRow const& r) { return std::tuple(r.l, r.n_r, r.q); };
        CHECK(key(rows[i - 1]) < key(rows[i]));
    }

    cfg.sweep = SweepRange{0.01, 0.05, 5};
    CHECK_THROWS_AS(sweep_rows(cfg), ValidityError);
}

TEST_CASE("ground-state samples")
{
    auto cfg    = reference_config(0.5, 3);
    cfg.l       = 0;
    cfg.samples = 4001;
    auto wf     = wavefunction_samples(cfg);
    REQUIRE(wf.size() == 4001);

    double r0 = *singularity_radius(cfg.parameters);
    CHECK(wf.front().r == doctest::Approx(r0).epsilon(1e-14));
    CHECK(wf.front().R_normalized == 0.0);

    double peak = 0;
    std::vector<double> r, R2;
    for (auto const& s : wf) {
        peak = std::max(peak, std::abs(s.R_normalized));
        r.push_back(s.r);
        R2.push_back(s.R_normalized * s.R_normalized);
    }
    CHECK(std::abs(wf.back().R_normalized) < 1e-9 * peak);
    CHECK(trapezoid(r, R2) == doctest::Approx(1).epsilon(1e-10));

    SUBCASE("overlap with the numeric ground state")
    {
        SolveOptions o;
        o.eigenvectors = true;
        auto res       = solve_bound_states(cfg.parameters, 0, CentrifugalMode::pekeris, o);
        REQUIRE_FALSE(res.eigenfunctions.empty());
        auto const& ef = res.eigenfunctions[0];

        auto pek = pekeris_coefficients(cfg.parameters);
        auto s   = superpotential_params(effective_coefficients(cfg.parameters, 0, pek));
        std::vector<double> cf(ef.r.size()), cf2(ef.r.size()), prod(ef.r.size());
        for (std::size_t i = 0; i < ef.r.size(); ++i) {
            double x = (ef.r[i] - cfg.parameters.r_e) / cfg.parameters.r_e;
            cf[i]    = x > s.x0() ? ground_state_wavefunction(x, s) : 0.0;
            cf2[i]   = cf[i] * cf[i];
        }
        double norm = std::sqrt(trapezoid(ef.r, cf2));
        for (std::size_t i = 0; i < ef.r.size(); ++i) {
            prod[i] = ef.R[i] * cf[i] / norm;
        }
        CHECK(std::abs(1 - std::abs(trapezoid(ef.r, prod))) <= 1e-4);
    }

    SUBCASE("inadmissible ground state")
    {
        auto weak = reference_config(0.999);
        CHECK_THROWS_AS(wavefunction_samples(weak), AdmissibilityError);
    }
}

TEST_CASE("command exit codes")
{
    std::string const ref = "--V0 15 --bh 1.6189 --re 1";
    CHECK(run_tool("validate " + ref + " --q 0.5") == 0);
    CHECK(run_tool("validate " + ref + " --q 0.170066") == exit_code::validation);
    CHECK(run_tool("validate " + ref + " --q 1") == exit_code::validation);
    CHECK(run_tool("spectrum " + ref + " --q 0.5 --lmax 1 --modes closed,numeric-pekeris") == 0);
    CHECK(run_tool("spectrum " + ref + " --q 0.170066") == exit_code::validation);
    CHECK(run_tool("spectrum " + ref + " --q 0.170066 --force") == 0);
    CHECK(run_tool("sweep-q " + ref + " --sweep 0.01:0.05:3") == exit_code::validation);
    CHECK(run_tool("spectrum --modes bogus") == exit_code::config);
    CHECK(run_tool("spectrum --no-such-flag") == exit_code::config);
    CHECK(run_tool("spectrum --config /nonexistent/file.cfg") == exit_code::config);

    auto out = std::filesystem::temp_directory_path() / "hua_spectra_test.json";
    std::filesystem::remove(out);
    CHECK(run_tool("spectrum " + ref + " --q 0.5 --lmax 1 --format json --out " + out.string()) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    auto rows = read_json(in);
    CHECK(rows.size() == 4);
    std::filesystem::remove(out);
}
