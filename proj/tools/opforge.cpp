#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "opforge/verbs.hpp"

int main(int argc, char** argv) {
    CLI::App app{"opforge: exact computer algebra for colored dg operads"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    app.add_option("-w,--workspace", files, "workspace .opf files (JSON, opforge/1)");

    opforge::VerbOptions opt;
    for (const auto& verb : opforge::verb_names()) {
        CLI::App* sub = app.add_subcommand(verb, "");
        sub->add_option("-w,--workspace", files,
                        "workspace .opf files (JSON, opforge/1)");
        sub->add_option("--ring", opt.ring, "Q | Z | Fp:<p>");
        sub->add_option("--max-arity", opt.max_arity, "operad arity bound");
        sub->add_option("--truncation", opt.truncation, "word-length truncation");
        sub->add_option("--seed", opt.seed, "seed for generated instances");
        sub->add_option("--format", opt.format, "text | json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", opt.out, "write the report to a file");
        sub->add_option("--operad", opt.operad, "workspace name or Com, ComU, Ass");
        sub->add_option("--algebra", opt.algebra,
                        "workspace name or initial, square-zero");
        sub->add_option("--splitting", opt.splitting,
                        "workspace name or rational, planar");
        sub->add_option("--complex", opt.complex, "workspace complex");
        sub->add_option("--map", opt.map, "workspace map (or id, pi)");
        sub->add_option("--module", opt.module, "workspace module");
        sub->add_option("--generators", opt.generators, "workspace complex");
        sub->add_option("--category", opt.category, "terminal | arrow | square");
        sub->add_option("--f", opt.f, "workspace map V -> W");
        sub->add_option("--g", opt.g, "workspace map V -> A");
        sub->add_option("--source", opt.source, "color tuple, comma separated");
        sub->add_option("--target", opt.target, "color tuple, comma separated");
        sub->add_option("--level", opt.level, "simplicial level / n_max");
        sub->add_option("--n", opt.n, "Omega_n coordinate count");
        sub->add_option("--degree", opt.degree, "degree parameter");
        sub->add_option("--color", opt.color, "color parameter");
        sub->add_option("--count", opt.count, "number of seeded instances");
        sub->add_option("--window", opt.window, "module action window");
        sub->add_option("--gen-rank", opt.gen_rank, "generator rank");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (const char* th = std::getenv("OPFORGE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(th, &end, 10);
        if (end == th || *end != '\0' || v < 1) {
            std::cerr << "error: OPFORGE_THREADS must be a positive integer\n";
            return 2;
        }
    }

    const std::string verb = app.get_subcommands().at(0)->get_name();
    try {
        opforge::Workspace ws = opforge::parse_workspace(files);
        opforge::VerbReport rep = opforge::run_verb(verb, opt, ws);
        std::string payload =
            opt.format == "json" ? rep.machine.dump(2) + "\n" : rep.text;
        if (!opt.out.empty()) {
            std::ofstream out(opt.out);
            if (!out) {
                std::cerr << "error: cannot write " << opt.out << "\n";
                return 2;
            }
            out << payload;
        } else {
            std::cout << payload;
        }
        return rep.exit_code;
    } catch (const opforge::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const opforge::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const opforge::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
