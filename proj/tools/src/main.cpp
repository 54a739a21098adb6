#include <iostream>
#include <new>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wgkm_cli/commands.hpp"

using wgkm::cli::CommandResult;

int main(int argc, char** argv) {
    CLI::App app{"Equivariant intersection theory of wonderful symmetric varieties of "
                 "minimal rank, by localization at torus fixed points"};
    app.require_subcommand(1);

    std::string space, variety = "X", bundle = "T", mode = "direct", level = "fast";
    std::string expr, rebuild_space;
    std::optional<std::uint32_t> max_degree;
    int dims_degree = 3;
    bool clear = false;

    auto add_space = [&](CLI::App* sub) {
        sub->add_option("space", space,
                        "space descriptor: group:<type>, AC:<n>, DB:<n>, EF6, or a "
                        "comma-separated product")
            ->required();
    };

    CLI::App* c_describe = app.add_subcommand("describe", "classification report of a space");
    add_space(c_describe);

    CLI::App* c_gkm = app.add_subcommand("gkm", "fixed-point graph with tangent and edge weights");
    add_space(c_gkm);
    c_gkm->add_option("--variety", variety, "X (full space) or Y (toric slice)")
        ->check(CLI::IsMember({"X", "Y"}));

    CLI::App* c_chern = app.add_subcommand("chern", "total Chern class at every fixed point");
    add_space(c_chern);
    c_chern->add_option("--bundle", bundle, "T (tangent) or S (log tangent)")
        ->check(CLI::IsMember({"T", "S"}));
    c_chern->add_option("--mode", mode,
                        "direct (weight products on X) or formula (divisor products on Y)")
        ->check(CLI::IsMember({"direct", "formula"}));
    c_chern->add_option("--max-degree", max_degree, "truncation degree (default: dim)");

    CLI::App* c_todd = app.add_subcommand("todd", "Todd class at every fixed point of X");
    add_space(c_todd);
    c_todd->add_option("--bundle", bundle, "T (tangent) or S (log tangent)")
        ->check(CLI::IsMember({"T", "S"}));
    c_todd->add_option("--max-degree", max_degree, "truncation degree (default: dim)");

    CLI::App* c_integrate = app.add_subcommand("integrate", "exact integral of a class expression");
    add_space(c_integrate);
    c_integrate
        ->add_option("--expr", expr,
                     "product of atoms cK(T|S), Xi, Yi,w, td(T|S), L(k), with '^' powers")
        ->required();

    CLI::App* c_euler = app.add_subcommand("euler", "Euler characteristic of X");
    add_space(c_euler);

    CLI::App* c_betti = app.add_subcommand("betti", "Betti numbers from attracting cells");
    add_space(c_betti);
    c_betti->add_option("--variety", variety, "X (full space) or Y (toric slice)")
        ->check(CLI::IsMember({"X", "Y"}));

    CLI::App* c_verify = app.add_subcommand("verify", "run the named-identity check suite");
    add_space(c_verify);
    c_verify->add_option("--level", level, "fast (combinatorial) or full (all class identities)")
        ->check(CLI::IsMember({"fast", "full"}));

    CLI::App* c_dims = app.add_subcommand(
        "dims", "graded dimensions of the rational class ring, two independent routes");
    add_space(c_dims);
    c_dims->add_option("--max-degree", dims_degree, "largest degree to report (default: 3)");

    CLI::App* c_cache = app.add_subcommand("cache", "manage the Weyl enumeration cache");
    c_cache->add_option("--rebuild", rebuild_space, "re-enumerate and rewrite the cache of a space");
    c_cache->add_flag("--clear", clear, "remove all cache files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        CommandResult result;
        if (*c_describe) result = wgkm::cli::cmd_describe(space);
        else if (*c_gkm) result = wgkm::cli::cmd_gkm(space, variety);
        else if (*c_chern) result = wgkm::cli::cmd_chern(space, bundle, mode, max_degree);
        else if (*c_todd) result = wgkm::cli::cmd_todd(space, bundle, max_degree);
        else if (*c_integrate) result = wgkm::cli::cmd_integrate(space, expr);
        else if (*c_euler) result = wgkm::cli::cmd_euler(space);
        else if (*c_betti) result = wgkm::cli::cmd_betti(space, variety);
        else if (*c_verify) result = wgkm::cli::cmd_verify(space, level);
        else if (*c_dims) result = wgkm::cli::cmd_dims(space, dims_degree);
        else if (*c_cache) {
            if (clear == !rebuild_space.empty())
                throw wgkm::Error(wgkm::ErrorKind::Usage,
                                  "cache needs exactly one of --rebuild <space> or --clear");
            result = clear ? wgkm::cli::cmd_cache_clear()
                           : wgkm::cli::cmd_cache_rebuild(rebuild_space);
        }
        std::cout << result.body.dump() << "\n";
        return result.exit_code;
    } catch (const wgkm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wgkm::cli::exit_code_of(e.kind());
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory during exact computation\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
