#include <iostream>

#include <CLI11.hpp>

#include "hilmod/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"hilmod: Hilbert modular Borcherds products for rank-2 hyperbolic root systems"};
    app.require_subcommand(1);

    hilmod::RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "output file path");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* pell = app.add_subcommand("pell", "Pell solution family (a_k, s_k)");
    pell->add_option("p", cfg.p, "odd prime")->required();
    pell->add_option("K", cfg.pell_count, "number of solutions")->required();
    add_common(pell);

    CLI::App* fm = app.add_subcommand("fm", "coefficients of the plus-space form f_m");
    fm->add_option("p", cfg.p, "prime in {5, 13}")->required();
    fm->add_option("m", cfg.m, "index with chi_p(m) != -1")->required();
    fm->add_option("N", cfg.order, "truncation order")->required();
    add_common(fm);

    CLI::App* verify = app.add_subcommand("verify", "check a coefficient file");
    verify->add_option("file", cfg.input_path, "fixture JSON")->required();

    CLI::App* roots = app.add_subcommand("roots", "root lists of H(a_k)");
    roots->add_option("p", cfg.p, "odd prime")->required();
    roots->add_option("family", cfg.family, "re for real roots, or the norm index k")->required();
    roots->add_option("j_max", cfg.j_max, "twist bound")->required();
    roots->add_option("--ak", cfg.k, "Pell solution index (default 1)");
    add_common(roots);

    CLI::App* embed = app.add_subcommand("embed", "H(a_l) inside H(a_k): Gram + root rejection");
    embed->add_option("p", cfg.p, "odd prime")->required();
    embed->add_option("k", cfg.k, "ambient Pell index")->required();
    embed->add_option("l", cfg.l, "embedded Pell index, k | l")->required();

    CLI::App* phi = app.add_subcommand("phi", "expand Phi_1 and run its structure checks");
    phi->add_option("p", cfg.p, "prime in {5, 13, 17}")->required();
    phi->add_option("H", cfg.height, "truncation height")->required();
    phi->add_option("--f1", cfg.f1_path, "f_1 coefficient file (required for p = 17)");
    phi->add_option("--order", cfg.order, "minimum f_1 construction order");
    add_common(phi);

    CLI::App* check = app.add_subcommand("check", "re-run structure checks on a saved expansion");
    check->add_option("file", cfg.input_path, "series JSON")->required();

    CLI::App* asym = app.add_subcommand("asym", "main-term asymptotics of a_m(n)");
    asym->add_option("p", cfg.p, "odd prime")->required();
    asym->add_option("m", cfg.m, "form index")->required();
    asym->add_option("n", cfg.n, "coefficient index")->required();
    asym->add_flag("--exact", cfg.exact, "compare against the exact coefficient");
    asym->add_option("--f1", cfg.f1_path, "coefficient file supplying the exact value");
    asym->add_option("--order", cfg.order, "construction order for the exact value");
    add_common(asym);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        return hilmod::run(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
