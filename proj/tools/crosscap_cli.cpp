// crosscap: invariants of curves through a Whitney umbrella.
//
//   crosscap report <config>
//   crosscap verify <config> | --sweep [--seed N] [--draws M] [--json]
//   crosscap mesh <config> --out DIR
//   crosscap fixtures --list | --show NAME | --write DIR
//
// <config> is a JSON file, or the name of a bundled fixture.
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crosscap/crosscap.hpp"

namespace fs = std::filesystem;
using namespace crosscap;

namespace {

RunConfig load_config(const std::string& where) {
    if (!fs::exists(where)) {
        if (auto f = find_fixture(where)) return f->config;
        throw std::runtime_error("no such file or fixture: " + where);
    }
    std::ifstream in(where, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string obj_text(const Mesh& m) {
    std::ostringstream s;
    write_obj(s, m);
    return s.str();
}

int run_mesh(const RunConfig& cfg, const fs::path& dir) {
    fs::create_directories(dir);
    const auto W = build_umbrella(cfg.coeffs);
    const auto curve = build_curve(cfg.curve, cfg.storage_order());
    const auto& m = cfg.mesh;
    write_file(dir / "umbrella.obj", obj_text(sample_umbrella(W, m.u, m.nu, m.v, m.nv)));
    write_file(dir / "curve.obj", obj_text(sample_image_curve(W, curve, m.x, m.nx)));
    const auto od = osculating_developable(W, curve, cfg.float_order);
    write_file(dir / "od_w.obj", obj_text(sample_ruled_surface(od.surface(), m.x, m.nx, m.y, m.ny)));
    std::cout << "wrote " << (dir / "umbrella.obj").string() << ", " << (dir / "curve.obj").string() << ", "
              << (dir / "od_w.obj").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariants of curves through a Whitney umbrella"};
    app.require_subcommand(1);

    std::string config_path;
    auto* report = app.add_subcommand("report", "Print the invariant report for a configuration as JSON");
    report->add_option("config", config_path, "Configuration file or fixture name")->required();

    bool sweep = false, as_json = false;
    std::uint64_t seed = 0;
    int draws = 10;
    auto* verify = app.add_subcommand("verify", "Compare the series oracle with the closed-form tables");
    verify->add_option("config", config_path, "Configuration file or fixture name");
    verify->add_flag("--sweep", sweep, "Run seeded generic draws over every subcase");
    verify->add_option("--seed", seed, "Sweep seed")->capture_default_str();
    verify->add_option("--draws", draws, "Draws per subcase")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_flag("--json", as_json, "Emit rows as JSON");

    std::string out_dir;
    auto* mesh = app.add_subcommand("mesh", "Write umbrella.obj, curve.obj and od_w.obj");
    mesh->add_option("config", config_path, "Configuration file or fixture name")->required();
    mesh->add_option("--out", out_dir, "Output directory")->required();

    bool list = false;
    std::string show, write_dir;
    auto* fixtures = app.add_subcommand("fixtures", "Bundled fixtures");
    fixtures->add_flag("--list", list, "List fixture names");
    fixtures->add_option("--show", show, "Print one fixture as a configuration file");
    fixtures->add_option("--write", write_dir, "Write every fixture as <name>.json into a directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*report) {
            std::cout << render_report(load_config(config_path));
            return 0;
        }
        if (*verify) {
            if (sweep == !config_path.empty()) {
                std::cerr << "verify: give either a configuration or --sweep\n";
                return 2;
            }
            std::vector<VerifyRow> rows;
            if (sweep) {
                rows = run_sweep(seed, draws);
            } else {
                const auto cfg = load_config(config_path);
                rows.push_back(verify_case(cfg.coeffs, cfg.curve, cfg.name, 0, cfg.order));
            }
            if (as_json)
                std::cout << verify_to_json(rows).dump(2) << "\n";
            else
                std::cout << render_verify_table(rows);
            return verify_exit_code(rows);
        }
        if (*mesh) return run_mesh(load_config(config_path), out_dir);
        if (*fixtures) {
            if (!show.empty()) {
                const auto f = find_fixture(show);
                if (!f) throw std::runtime_error("unknown fixture: " + show);
                std::cout << emit_config(f->config);
            } else if (!write_dir.empty()) {
                fs::create_directories(write_dir);
                for (const auto& f : builtin_fixtures())
                    write_file(fs::path(write_dir) / (f.name + ".json"), emit_config(f.config));
            } else {
                for (const auto& f : builtin_fixtures()) std::cout << f.name << "\t" << f.summary << "\n";
            }
            return 0;
        }
    } catch (const config_error& e) {
        std::cerr << "invalid configuration:\n";
        for (const auto& p : e.problems()) std::cerr << "  " << p << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
