#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ctt/chartab.hpp"
#include "ctt/errors.hpp"
#include "ctt/extensions.hpp"
#include "ctt/permgroup.hpp"
#include "ctt/tblio.hpp"
#include "ctt/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ctt::error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ctt::error("cannot write " + path);
    out << text;
}

ctt::permgroup::PermutationGroup load_group(const std::string& path) {
    auto doc = ctt::tblio::parse_group(read_file(path));
    return ctt::permgroup::PermutationGroup(doc.degree, doc.generators);
}

ctt::chartab::CharacterTable load_table(const std::string& path) {
    return ctt::tblio::parse_table(read_file(path));
}

std::string cycle_string(const ctt::permgroup::Permutation& p) {
    auto cs = p.cycles();
    if (cs.empty()) return "()";
    std::string out;
    for (const auto& c : cs) {
        out += "(";
        for (size_t i = 0; i < c.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(c[i] + 1);
        }
        out += ")";
    }
    return out;
}

// Parses whitespace-separated cycle-notation permutations by wrapping them
// in a group document.
std::vector<ctt::permgroup::Permutation> parse_generators(
    const std::string& text, int degree) {
    std::ostringstream doc;
    doc << "FORMAT 1\nNAME -\nDEGREE " << degree << "\nGENERATORS\n";
    std::istringstream in(text);
    std::string token;
    while (in >> token) doc << token << "\n";
    return ctt::tblio::parse_group(doc.str()).generators;
}

// Short reason why two tables cannot be equivalent, for `compare` output.
std::string first_obstruction(const ctt::chartab::CharacterTable& a,
                              const ctt::chartab::CharacterTable& b,
                              bool use_power_maps) {
    if (a.row_count() != b.row_count() || a.class_count() != b.class_count())
        return "tables have different dimensions";
    if (use_power_maps) {
        if (a.order != b.order) return "group orders differ";
        std::multiset<std::pair<std::string, std::int64_t>> pa, pb;
        for (int k = 0; k < a.class_count(); ++k) {
            pa.emplace(a.class_sizes[static_cast<size_t>(k)].str(),
                       a.element_orders[static_cast<size_t>(k)]);
            pb.emplace(b.class_sizes[static_cast<size_t>(k)].str(),
                       b.element_orders[static_cast<size_t>(k)]);
        }
        if (pa != pb) return "class size/order profiles differ";
        std::vector<std::int64_t> ka, kb;
        for (const auto& [p, m] : a.power_maps) ka.push_back(p);
        for (const auto& [p, m] : b.power_maps) kb.push_back(p);
        if (ka != kb) return "stored power-map primes differ";
    }
    return "no row/column permutation matches the value matrices";
}

int run_compute(const std::string& group_path, const std::string& out_path,
                const ctt::chartab::ComputeOptions& opt) {
    auto doc = ctt::tblio::parse_group(read_file(group_path));
    ctt::permgroup::PermutationGroup g(doc.degree, doc.generators);
    auto t = ctt::chartab::compute_character_table(g, opt);
    t.group_name = doc.name;
    std::string text = ctt::tblio::serialize_table(t);
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return 0;
}

int run_check(const std::string& table_path) {
    auto t = load_table(table_path);
    auto report = ctt::verify::check_table(t);
    std::cout << report.str();
    return report.all_passed() ? 0 : 1;
}

int run_compare(const std::string& a_path, const std::string& b_path,
                bool ignore_power_maps) {
    auto a = load_table(a_path);
    auto b = load_table(b_path);
    auto witness = ctt::verify::tables_equivalent(a, b, !ignore_power_maps);
    if (!witness) {
        std::cout << "equivalent: no\n"
                  << "obstruction: "
                  << first_obstruction(a, b, !ignore_power_maps) << "\n";
        return 1;
    }
    std::cout << "equivalent: yes\n";
    std::cout << "row_map:";
    for (int x : witness->row_perm) std::cout << " " << x;
    std::cout << "\ncolumn_map:";
    for (int x : witness->col_perm) std::cout << " " << x;
    std::cout << "\n";
    return 0;
}

int run_pipeline(const std::string& group_path, const std::string& table_path,
                 const ctt::chartab::ComputeOptions& opt) {
    auto g = load_group(group_path);
    auto reference = load_table(table_path);
    auto report = ctt::extensions::pipeline_verify(g, reference, opt);
    std::cout << report.str();
    return report.agrees() ? 0 : 1;
}

struct MutateArgs {
    std::string table;
    std::string kind;
    int row = -1;
    int row2 = -1;
    int column = -1;
    int column2 = -1;
    std::vector<int> columns;
    std::int64_t prime = 2;
    std::int64_t root_order = 0;
    std::int64_t root_exponent = 1;
    std::string param;
};

int run_mutate(const MutateArgs& args) {
    static const std::map<std::string, ctt::verify::MutationKind> kinds = {
        {"sign_flip", ctt::verify::MutationKind::sign_flip},
        {"value_change", ctt::verify::MutationKind::value_change},
        {"extension_swap", ctt::verify::MutationKind::extension_swap},
        {"class_split_merge", ctt::verify::MutationKind::class_split_merge},
        {"power_map_change", ctt::verify::MutationKind::power_map_change},
        {"irrationality_twist", ctt::verify::MutationKind::irrationality_twist},
    };
    auto it = kinds.find(args.kind);
    if (it == kinds.end())
        throw ctt::precondition_error("unknown mutation kind: " + args.kind);

    ctt::verify::MutationSpec spec;
    spec.kind = it->second;
    spec.row = args.row;
    spec.row2 = args.row2;
    spec.column = args.column;
    spec.column2 = args.column2;
    spec.columns = args.columns;
    spec.prime = args.prime;
    spec.root_order = args.root_order;
    spec.root_exponent = args.root_exponent;
    if (!args.param.empty()) spec.value = ctt::tblio::parse_value(args.param);

    auto t = load_table(args.table);
    auto mutant = ctt::verify::inject_mutation(t, spec);
    std::cout << ctt::tblio::serialize_table(mutant);
    return 0;
}

int run_enumerate(const std::string& group_path, const std::string& m_text,
                  const std::string& n_text) {
    auto g = load_group(group_path);
    auto m = ctt::permgroup::make_subgroup(
        g, parse_generators(m_text, g.degree()));
    auto n = ctt::permgroup::make_subgroup(
        g, parse_generators(n_text, g.degree()));
    auto ds = ctt::extensions::enumerate_bicyclic_subquotients(g, m, n);
    for (const auto& d : ds) {
        std::cout << d.label << " order=" << d.quotient_order.str() << " U=";
        const auto& ug = d.U.group.generators();
        if (ug.empty()) std::cout << "()";
        for (size_t i = 0; i < ug.size(); ++i)
            std::cout << (i ? "," : "") << cycle_string(ug[i]);
        std::cout << " K=";
        const auto& kg = d.K.group.generators();
        if (kg.empty()) std::cout << "()";
        for (size_t i = 0; i < kg.size(); ++i)
            std::cout << (i ? "," : "") << cycle_string(kg[i]);
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact character-table toolkit"};
    app.require_subcommand(1);

    std::int64_t max_order = 1000000;
    int threads = 1;
    std::uint64_t seed = 0;
    app.add_option("--max-order", max_order,
                   "largest group order accepted by computations");
    app.add_option("--threads", threads, "worker threads for class matrices");
    app.add_option("--seed", seed,
                   "seed for internal randomized search (never the output)");

    auto* compute = app.add_subcommand(
        "compute", "character table of a permutation group");
    std::string compute_group, compute_out;
    compute->add_option("group-file", compute_group)->required();
    compute->add_option("-o,--output", compute_out, "write table here");

    auto* check =
        app.add_subcommand("check", "internal consistency of a stored table");
    std::string check_table;
    check->add_option("table-file", check_table)->required();

    auto* compare = app.add_subcommand(
        "compare", "permutation equivalence of two stored tables");
    std::string compare_a, compare_b;
    bool ignore_power_maps = false;
    compare->add_option("table-a", compare_a)->required();
    compare->add_option("table-b", compare_b)->required();
    compare->add_flag("--ignore-power-maps", ignore_power_maps,
                      "match value matrices only");

    auto* pipeline = app.add_subcommand(
        "pipeline", "recompute a group's table and verify a stored one");
    std::string pipeline_group, pipeline_table;
    pipeline->add_option("group-file", pipeline_group)->required();
    pipeline->add_option("reference-table", pipeline_table)->required();

    auto* mutate =
        app.add_subcommand("mutate", "inject a catalogued error into a table");
    MutateArgs margs;
    mutate->add_option("table-file", margs.table)->required();
    mutate->add_option("--kind", margs.kind, "mutation kind")->required();
    mutate->add_option("--row", margs.row);
    mutate->add_option("--row2", margs.row2);
    mutate->add_option("--col", margs.column);
    mutate->add_option("--col2", margs.column2);
    mutate->add_option("--columns", margs.columns, "explicit column list");
    mutate->add_option("--prime", margs.prime);
    mutate->add_option("--root-order", margs.root_order);
    mutate->add_option("--root-exponent", margs.root_exponent);
    mutate->add_option("--param", margs.param, "replacement value");

    auto* enumerate = app.add_subcommand(
        "enumerate", "bicyclic subquotient representatives U/K");
    std::string enum_group, enum_m, enum_n;
    enumerate->add_option("group-file", enum_group)->required();
    enumerate->add_option("--M", enum_m, "generators of M")->required();
    enumerate->add_option("--N", enum_n, "generators of N")->required();

    CLI11_PARSE(app, argc, argv);

    ctt::chartab::ComputeOptions opt;
    opt.max_order = ctt::BigInt(max_order);
    opt.threads = threads;
    opt.seed = seed;

    try {
        if (*compute) return run_compute(compute_group, compute_out, opt);
        if (*check) return run_check(check_table);
        if (*compare) return run_compare(compare_a, compare_b, ignore_power_maps);
        if (*pipeline) return run_pipeline(pipeline_group, pipeline_table, opt);
        if (*mutate) return run_mutate(margs);
        if (*enumerate) return run_enumerate(enum_group, enum_m, enum_n);
    } catch (const ctt::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ctt::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
