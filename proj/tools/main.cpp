#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "iceqp/boundary.hpp"
#include "iceqp/mutation.hpp"
#include "iceqp/rewrite.hpp"
#include "iceqp/surface.hpp"

using namespace iceqp;

namespace {

// exit codes: 0 success, 1 operational error, 2 mathematical discrepancy
constexpr int kOk = 0;
constexpr int kOperational = 1;
constexpr int kDiscrepancy = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::parse, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::parse, "cannot write " + path);
    out << text << "\n";
}

Triangulation load_triangulation(const std::string& file, const std::string& standard) {
    if (!standard.empty()) {
        auto colon = standard.find(':');
        std::string kind = standard.substr(0, colon);
        int m = colon == std::string::npos ? 0 : std::stoi(standard.substr(colon + 1));
        if (kind == "fan")
            return standard_triangulation(StandardKind::fan, m);
        if (kind == "star")
            return standard_triangulation(StandardKind::star, m);
        if (kind == "annulus_11")
            return standard_triangulation(StandardKind::annulus_11);
        throw Error(ErrorKind::unsupported_kind, "unknown standard triangulation: " + standard);
    }
    return triangulation_from_json(slurp(file));
}

std::vector<int> load_weights(const std::string& file, const Quiver& q) {
    if (file.empty())
        return {};
    nlohmann::json j = nlohmann::json::parse(slurp(file));
    std::vector<int> weights(q.num_arrows(), 1);
    for (const auto& [id, w] : j.items())
        weights[q.arrow_index(id)] = w.get<int>();
    return weights;
}

std::string render(const nlohmann::json& j, const std::string& format) {
    if (format == "json")
        return j.dump(2);
    std::ostringstream os;
    for (const auto& [key, value] : j.items())
        os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
           << "\n";
    std::string s = os.str();
    if (!s.empty())
        s.pop_back();
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ice quivers with potential from triangulated surfaces"};
    app.require_subcommand(1);
    app.fallthrough();

    int degree = 16;
    std::string variant = "exclude-Y-only";
    std::string format = "json";
    std::string weights_file;
    app.add_option("--degree", degree, "truncation / certificate degree");
    app.add_option("--variant", variant, "Jacobian ideal variant")
        ->check(CLI::IsMember({"not-both-frozen", "exclude-Y-only"}));
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--weights", weights_file, "JSON file of per-arrow order weights");

    std::string in_file, out_file, standard, second, vertex, arc;
    int oracle_n = 1, oracle_p = 0;
    std::size_t max_orbit = 1000;
    std::string external = "all-external";

    CLI::App* build = app.add_subcommand("build", "triangulation file -> ice QP file");
    build->add_option("--in", in_file);
    build->add_option("--standard", standard, "fan:m | star:m | annulus_11");
    build->add_option("--out", out_file);
    build->add_option("--external", external)
        ->check(CLI::IsMember({"all-external", "incident-only"}));

    CLI::App* mutate_cmd = app.add_subcommand("mutate", "QP mutation at a vertex");
    mutate_cmd->add_option("--in", in_file)->required();
    mutate_cmd->add_option("--vertex", vertex)->required();
    mutate_cmd->add_option("--out", out_file);
    std::string report_file;
    mutate_cmd->add_option("--report", report_file);

    CLI::App* flip_cmd = app.add_subcommand("flip", "flip an arc of a triangulation");
    flip_cmd->add_option("--in", in_file);
    flip_cmd->add_option("--standard", standard);
    flip_cmd->add_option("--arc", arc)->required();
    flip_cmd->add_option("--out", out_file);

    CLI::App* relations_cmd = app.add_subcommand("relations", "QP -> Jacobian relations");
    relations_cmd->add_option("--in", in_file)->required();
    relations_cmd->add_option("--out", out_file);

    CLI::App* basis_cmd = app.add_subcommand("basis", "QP or triangulation -> boundary profile");
    basis_cmd->add_option("--in", in_file, "ice QP json");
    basis_cmd->add_option("--triangulation", second, "triangulation json (graded profile)");
    basis_cmd->add_option("--standard", standard);
    basis_cmd->add_option("--out", out_file);
    std::string system_file;
    basis_cmd->add_option("--system", system_file, "also dump the completed rewrite system");

    CLI::App* compare_cmd = app.add_subcommand("compare", "two profiles -> verdict");
    std::string file_a, file_b;
    compare_cmd->add_option("--a", file_a)->required();
    compare_cmd->add_option("--b", file_b)->required();

    CLI::App* orbit_cmd = app.add_subcommand("orbit-check", "flip-orbit sweep");
    orbit_cmd->add_option("--in", in_file);
    orbit_cmd->add_option("--standard", standard);
    orbit_cmd->add_option("--max-size", max_orbit);

    CLI::App* oracle_cmd = app.add_subcommand("oracle-check", "polygon oracle vs triangulation");
    oracle_cmd->add_option("--n", oracle_n)->required();
    oracle_cmd->add_option("--p", oracle_p)->required();
    oracle_cmd->add_option("--in", in_file);
    oracle_cmd->add_option("--standard", standard);

    CLI::App* dot_cmd = app.add_subcommand("export-dot", "quiver -> DOT");
    dot_cmd->add_option("--in", in_file)->required();
    dot_cmd->add_option("--out", out_file);

    CLI11_PARSE(app, argc, argv);

    try {
        IdealVariant ivar = ideal_variant_from_string(variant);
        if (build->parsed()) {
            Triangulation t = load_triangulation(in_file, standard);
            IceQP qp = build_ice_qp(t, external_variant_from_string(external));
            spit(out_file, iceqp_to_json(qp));
            return kOk;
        }
        if (mutate_cmd->parsed()) {
            IceQP qp = iceqp_from_json(slurp(in_file));
            auto [mut, report] = mutate(qp, vertex, degree);
            spit(out_file, iceqp_to_json(mut));
            if (!report_file.empty())
                spit(report_file, mutation_report_to_json(report));
            return kOk;
        }
        if (flip_cmd->parsed()) {
            Triangulation t = load_triangulation(in_file, standard);
            spit(out_file, triangulation_to_json(flip(t, arc)));
            return kOk;
        }
        if (relations_cmd->parsed()) {
            IceQP qp = iceqp_from_json(slurp(in_file));
            nlohmann::json out = nlohmann::json::array();
            for (const auto& rel : frozen_relations(qp, ivar))
                out.push_back({{"arrow", rel.source_arrow},
                               {"element", nlohmann::json::parse(element_to_json(rel.element))}});
            nlohmann::json j;
            j["variant"] = variant;
            j["relations"] = out;
            spit(out_file, render(j, format));
            return kOk;
        }
        if (basis_cmd->parsed()) {
            BoundaryProfile p;
            if (!second.empty() || !standard.empty()) {
                Triangulation t = load_triangulation(second, standard);
                QpBuild b = build_ice_qp_full(t);
                std::vector<int> weights;
                try {
                    weights = homogeneous_arrow_weights(b);
                } catch (const Error&) {
                }
                if (!system_file.empty())
                    spit(system_file,
                         rewrite_system_to_json(boundary_system(b.qp, degree, ivar, weights)));
                p = boundary_profile(b, degree, ivar);
            } else {
                IceQP qp = iceqp_from_json(slurp(in_file));
                std::vector<int> weights = load_weights(weights_file, qp.quiver());
                if (!system_file.empty())
                    spit(system_file,
                         rewrite_system_to_json(boundary_system(qp, degree, ivar, weights)));
                p = boundary_profile(qp, degree, ivar, {}, weights);
            }
            spit(out_file, profile_to_json(p));
            return kOk;
        }
        if (compare_cmd->parsed()) {
            BoundaryProfile a = profile_from_json(slurp(file_a));
            BoundaryProfile b = profile_from_json(slurp(file_b));
            CompareVerdict v = compare_profiles(a, b);
            nlohmann::json j;
            j["status"] = v.equal ? "pass" : "discrepancy";
            j["certificate_degree"] = v.degree_used;
            if (v.equal) {
                nlohmann::json bij = nlohmann::json::array();
                for (const auto& [x, y] : v.bijection)
                    bij.push_back({{"from", x}, {"to", y}});
                j["witness"] = bij;
            } else {
                j["first_discrepancy"] = v.discrepancy;
            }
            std::cout << render(j, format) << "\n";
            return v.equal ? kOk : kDiscrepancy;
        }
        if (orbit_cmd->parsed()) {
            Triangulation t = load_triangulation(in_file, standard);
            OrbitCheckReport r = orbit_check(t, degree, max_orbit, ivar);
            nlohmann::json j;
            bool pass = !r.overflowed && r.all_profiles_equal && r.all_witnesses_pass;
            j["status"] = pass ? "pass" : "discrepancy";
            j["certificate_degree"] = degree;
            j["variant"] = variant;
            j["orbit_size"] = r.orbit_size;
            j["profile_pairs"] = r.profile_pairs;
            j["witnesses"] = r.witnesses;
            if (!pass)
                j["first_discrepancy"] = r.first_failure;
            std::cout << render(j, format) << "\n";
            return pass ? kOk : kDiscrepancy;
        }
        if (oracle_cmd->parsed()) {
            Triangulation t = load_triangulation(in_file, standard);
            QpBuild b = build_ice_qp_full(t);
            CompareVerdict v =
                compare_profiles(boundary_profile(b, degree, ivar),
                                 polygon_oracle(oracle_n, oracle_p, degree));
            nlohmann::json j;
            j["status"] = v.equal ? "pass" : "discrepancy";
            j["certificate_degree"] = v.degree_used;
            j["variant"] = variant;
            if (!v.equal)
                j["first_discrepancy"] = v.discrepancy;
            std::cout << render(j, format) << "\n";
            return v.equal ? kOk : kDiscrepancy;
        }
        if (dot_cmd->parsed()) {
            IceQP qp = iceqp_from_json(slurp(in_file));
            spit(out_file, to_dot(qp.quiver()));
            return kOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOperational;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOperational;
    }
    return kOperational;
}
