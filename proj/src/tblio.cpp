#include "ctt/tblio.hpp"

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ctt/errors.hpp"

namespace ctt::tblio {

namespace {

using cyclo::Cyclo;

struct Token {
    std::string text;
    int column = 1;  // 1-based
};

struct DocLine {
    int number = 1;  // 1-based
    std::vector<Token> tokens;
};

// Lines that carry content: blank lines and #-comment lines are dropped.
std::vector<DocLine> significant_lines(const std::string& text) {
    std::vector<DocLine> out;
    int number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t nl = text.find('\n', pos);
        const std::string raw = text.substr(
            pos, nl == std::string::npos ? std::string::npos : nl - pos);
        ++number;
        DocLine line;
        line.number = number;
        for (size_t i = 0; i < raw.size();) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            if (raw[i] == '#') break;  // comment to end of line
            const size_t start = i;
            while (i < raw.size() &&
                   !std::isspace(static_cast<unsigned char>(raw[i])))
                ++i;
            line.tokens.push_back(
                {raw.substr(start, i - start), static_cast<int>(start) + 1});
        }
        if (!line.tokens.empty()) out.push_back(std::move(line));
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    return out;
}

bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

BigInt parse_uint_token(const Token& t, int line, const std::string& what) {
    if (t.text.empty() ||
        t.text.find_first_not_of("0123456789") != std::string::npos)
        throw parse_error(line, t.column, what + " must be an unsigned integer");
    return BigInt(t.text);
}

std::int64_t parse_index_token(const Token& t, int line,
                               const std::string& what) {
    return to_int64(parse_uint_token(t, line, what), what.c_str());
}

// ---------- cyclotomic value expressions ----------

// value = ["-"|"+"] term { ("+"|"-") term }
// term  = rational | rational "*" root | root
// root  = "E(" uint ")" [ "^" ["-"] uint ]
Cyclo parse_value_at(const std::string& s, int line, int col0) {
    size_t i = 0;
    const auto fail = [&](const std::string& msg) {
        throw parse_error(line, col0 + static_cast<int>(i), msg);
    };
    const auto parse_digits = [&]() -> BigInt {
        const size_t b = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i == b) fail("expected digits in value");
        return BigInt(s.substr(b, i - b));
    };
    const auto parse_root = [&]() -> Cyclo {
        if (i >= s.size() || s[i] != 'E') fail("expected E(n) root of unity");
        ++i;
        if (i >= s.size() || s[i] != '(') fail("expected '(' after E");
        ++i;
        const BigInt n_big = parse_digits();
        if (i >= s.size() || s[i] != ')') fail("expected ')' in E(n)");
        ++i;
        BigInt k = 1;
        if (i < s.size() && s[i] == '^') {
            ++i;
            bool neg = false;
            if (i < s.size() && s[i] == '-') {
                neg = true;
                ++i;
            }
            k = parse_digits();
            if (neg) k = -k;
        }
        const std::int64_t n = to_int64(n_big, "root index");
        if (n < 1) fail("root index must be positive");
        try {
            return Cyclo::root_of_unity(n, to_int64(k, "root exponent"));
        } catch (const error& e) {
            fail(e.what());
        }
        return Cyclo();  // unreachable
    };

    Cyclo acc;
    bool first = true;
    while (true) {
        if (i >= s.size()) {
            if (first) fail("empty value");
            break;
        }
        int sign = 1;
        if (s[i] == '+') {
            if (first) fail("value must not start with '+'");
            ++i;
        } else if (s[i] == '-') {
            sign = -1;
            ++i;
        } else if (!first) {
            fail("expected '+' or '-' between terms");
        }
        Cyclo term;
        if (i < s.size() && s[i] == 'E') {
            term = parse_root();
        } else {
            const BigInt num = parse_digits();
            BigInt den = 1;
            if (i < s.size() && s[i] == '/') {
                ++i;
                den = parse_digits();
                if (den == 0) fail("zero denominator");
            }
            term = Cyclo(BigRat(num, den));
            if (i < s.size() && s[i] == '*') {
                ++i;
                term *= parse_root();
            }
        }
        if (sign < 0) term = -term;
        acc += term;
        first = false;
    }
    return acc;
}

// A header line "<KEYWORD> ..." with an exact token count (0 = any).
const DocLine& expect_line(const std::vector<DocLine>& lines, size_t& cursor,
                           const std::string& keyword, int last_line) {
    if (cursor >= lines.size())
        throw parse_error(last_line, 1,
                          "unexpected end of document, expected " + keyword);
    const DocLine& line = lines[cursor];
    if (line.tokens[0].text != keyword)
        throw parse_error(line.number, line.tokens[0].column,
                          "expected " + keyword + " line, found '" +
                              line.tokens[0].text + "'");
    ++cursor;
    return line;
}

void expect_token_count(const DocLine& line, size_t count,
                        const std::string& what) {
    if (line.tokens.size() == count) return;
    const int col = line.tokens.size() > count
                        ? line.tokens[count].column
                        : line.tokens.back().column;
    throw parse_error(line.number, col,
                      what + " expects " + std::to_string(count - 1) +
                          " value(s), found " +
                          std::to_string(line.tokens.size() - 1));
}

int last_line_number(const std::vector<DocLine>& lines) {
    return lines.empty() ? 1 : lines.back().number;
}

}  // namespace

Cyclo parse_value(const std::string& token) {
    return parse_value_at(token, 1, 1);
}

chartab::CharacterTable parse_table(const std::string& text) {
    const auto lines = significant_lines(text);
    const int last = last_line_number(lines);
    size_t cursor = 0;

    const DocLine& fmt = expect_line(lines, cursor, "FORMAT", last);
    expect_token_count(fmt, 2, "FORMAT");
    if (fmt.tokens[1].text != "1")
        throw parse_error(fmt.number, fmt.tokens[1].column,
                          "unsupported format version '" + fmt.tokens[1].text +
                              "'");

    const DocLine& name_line = expect_line(lines, cursor, "NAME", last);
    if (name_line.tokens.size() > 2)
        throw parse_error(name_line.number, name_line.tokens[2].column,
                          "group name must be a single token");
    std::string name =
        name_line.tokens.size() == 2 ? name_line.tokens[1].text : "";

    const DocLine& order_line = expect_line(lines, cursor, "ORDER", last);
    expect_token_count(order_line, 2, "ORDER");
    const BigInt order =
        parse_uint_token(order_line.tokens[1], order_line.number, "order");
    if (order < 1)
        throw parse_error(order_line.number, order_line.tokens[1].column,
                          "order must be positive");

    const DocLine& ncls_line = expect_line(lines, cursor, "NCLASSES", last);
    expect_token_count(ncls_line, 2, "NCLASSES");
    const std::int64_t r64 = parse_index_token(ncls_line.tokens[1],
                                               ncls_line.number, "class count");
    if (r64 < 1 || r64 > 65536)
        throw parse_error(ncls_line.number, ncls_line.tokens[1].column,
                          "class count out of range");
    const int r = static_cast<int>(r64);
    const size_t ru = static_cast<size_t>(r);

    const DocLine& sizes_line = expect_line(lines, cursor, "SIZES", last);
    expect_token_count(sizes_line, ru + 1, "SIZES");
    std::vector<BigInt> sizes;
    BigInt size_sum = 0;
    for (int k = 0; k < r; ++k) {
        BigInt s = parse_uint_token(sizes_line.tokens[1 + static_cast<size_t>(k)],
                                    sizes_line.number, "class size");
        if (s < 1)
            throw parse_error(sizes_line.number,
                              sizes_line.tokens[1 + k].column,
                              "class size must be positive");
        size_sum += s;
        sizes.push_back(std::move(s));
    }
    if (size_sum != order)
        throw parse_error(sizes_line.number, sizes_line.tokens[1].column,
                          "class sizes sum to " + to_string(size_sum) +
                              ", order is " + to_string(order));

    const DocLine& orders_line = expect_line(lines, cursor, "ORDERS", last);
    expect_token_count(orders_line, ru + 1, "ORDERS");
    std::vector<std::int64_t> orders;
    int identity = -1;
    for (int k = 0; k < r; ++k) {
        const std::int64_t o = parse_index_token(
            orders_line.tokens[1 + k], orders_line.number, "element order");
        if (o < 1)
            throw parse_error(orders_line.number,
                              orders_line.tokens[1 + k].column,
                              "element order must be positive");
        if (o == 1) {
            if (identity >= 0)
                throw parse_error(orders_line.number,
                                  orders_line.tokens[1 + k].column,
                                  "more than one class has element order 1");
            identity = k;
        }
        orders.push_back(o);
    }
    if (identity < 0)
        throw parse_error(orders_line.number, orders_line.tokens[1].column,
                          "no class has element order 1");

    std::map<std::int64_t, std::vector<int>> power_maps;
    while (cursor < lines.size() &&
           lines[cursor].tokens[0].text == "POWERMAP") {
        const DocLine& pm_line = lines[cursor];
        ++cursor;
        expect_token_count(pm_line, ru + 2, "POWERMAP");
        const Token& key = pm_line.tokens[1];
        if (key.text.empty() || key.text.back() != ':')
            throw parse_error(pm_line.number, key.column,
                              "power-map prime must end with ':'");
        Token key_num{key.text.substr(0, key.text.size() - 1), key.column};
        const std::int64_t p =
            parse_index_token(key_num, pm_line.number, "power-map prime");
        if (!is_prime_i64(p))
            throw parse_error(pm_line.number, key.column,
                              "power-map key " + std::to_string(p) +
                                  " is not a prime");
        if (power_maps.count(p))
            throw parse_error(pm_line.number, key.column,
                              "duplicate power map for prime " +
                                  std::to_string(p));
        std::vector<int> pm;
        for (int k = 0; k < r; ++k) {
            const std::int64_t img = parse_index_token(
                pm_line.tokens[2 + k], pm_line.number, "power-map image");
            if (img < 1 || img > r)
                throw parse_error(pm_line.number,
                                  pm_line.tokens[2 + k].column,
                                  "power-map image out of range");
            pm.push_back(static_cast<int>(img - 1));
        }
        power_maps.emplace(p, std::move(pm));
    }

    const DocLine& chars_line = expect_line(lines, cursor, "CHARACTERS", last);
    expect_token_count(chars_line, 1, "CHARACTERS");

    std::vector<std::vector<Cyclo>> values;
    for (int row = 0; row < r; ++row) {
        if (cursor >= lines.size())
            throw parse_error(last, 1,
                              "value block has " + std::to_string(row) +
                                  " row(s), expected " + std::to_string(r));
        const DocLine& vl = lines[cursor];
        ++cursor;
        if (vl.tokens.size() != ru) {
            const int col = vl.tokens.size() > ru ? vl.tokens[ru].column
                                                  : vl.tokens.back().column;
            throw parse_error(vl.number, col,
                              "value row has " +
                                  std::to_string(vl.tokens.size()) +
                                  " entries, expected " + std::to_string(r));
        }
        std::vector<Cyclo> row_vals;
        row_vals.reserve(ru);
        for (int k = 0; k < r; ++k)
            row_vals.push_back(parse_value_at(vl.tokens[k].text, vl.number,
                                              vl.tokens[k].column));
        const Cyclo& deg = row_vals[static_cast<size_t>(identity)];
        if (!deg.is_integer() || deg.integer_value() < 1)
            throw parse_error(vl.number,
                              vl.tokens[static_cast<size_t>(identity)].column,
                              "degree entry is not a positive integer");
        values.push_back(std::move(row_vals));
    }
    if (cursor < lines.size())
        throw parse_error(lines[cursor].number, lines[cursor].tokens[0].column,
                          "unexpected content after the value block");

    chartab::CharacterTable t;
    t.group_name = std::move(name);
    t.order = order;
    t.class_sizes = std::move(sizes);
    t.element_orders = std::move(orders);
    t.power_maps = std::move(power_maps);
    t.values = std::move(values);
    t.identity_class = identity;
    return t;
}

std::string serialize_table(const chartab::CharacterTable& t) {
    std::ostringstream os;
    os << "FORMAT 1\n";
    os << "NAME";
    if (!t.group_name.empty()) os << " " << t.group_name;
    os << "\n";
    os << "ORDER " << to_string(t.order) << "\n";
    os << "NCLASSES " << t.class_sizes.size() << "\n";
    os << "SIZES";
    for (const BigInt& s : t.class_sizes) os << " " << to_string(s);
    os << "\n";
    os << "ORDERS";
    for (std::int64_t o : t.element_orders) os << " " << o;
    os << "\n";
    for (const auto& [p, pm] : t.power_maps) {
        os << "POWERMAP " << p << ":";
        for (int img : pm) os << " " << img + 1;
        os << "\n";
    }
    os << "CHARACTERS\n";
    for (const auto& row : t.values) {
        for (size_t k = 0; k < row.size(); ++k) {
            if (k) os << " ";
            os << row[k].str();
        }
        os << "\n";
    }
    return os.str();
}

GroupDocument parse_group(const std::string& text) {
    const auto lines = significant_lines(text);
    const int last = last_line_number(lines);
    size_t cursor = 0;

    const DocLine& fmt = expect_line(lines, cursor, "FORMAT", last);
    expect_token_count(fmt, 2, "FORMAT");
    if (fmt.tokens[1].text != "1")
        throw parse_error(fmt.number, fmt.tokens[1].column,
                          "unsupported format version '" + fmt.tokens[1].text +
                              "'");

    const DocLine& name_line = expect_line(lines, cursor, "NAME", last);
    if (name_line.tokens.size() > 2)
        throw parse_error(name_line.number, name_line.tokens[2].column,
                          "group name must be a single token");
    GroupDocument doc;
    doc.name = name_line.tokens.size() == 2 ? name_line.tokens[1].text : "";

    const DocLine& deg_line = expect_line(lines, cursor, "DEGREE", last);
    expect_token_count(deg_line, 2, "DEGREE");
    const std::int64_t degree =
        parse_index_token(deg_line.tokens[1], deg_line.number, "degree");
    if (degree < 1 || degree > 1000000)
        throw parse_error(deg_line.number, deg_line.tokens[1].column,
                          "degree out of range");
    doc.degree = static_cast<int>(degree);

    const DocLine& gens_line = expect_line(lines, cursor, "GENERATORS", last);
    expect_token_count(gens_line, 1, "GENERATORS");

    for (; cursor < lines.size(); ++cursor) {
        const DocLine& gl = lines[cursor];
        if (gl.tokens.size() != 1)
            throw parse_error(gl.number, gl.tokens[1].column,
                              "each generator must be a single token in "
                              "cycle notation");
        const std::string& s = gl.tokens[0].text;
        const int col0 = gl.tokens[0].column;
        std::vector<std::vector<int>> cycles;
        size_t i = 0;
        const auto fail = [&](const std::string& msg) {
            throw parse_error(gl.number, col0 + static_cast<int>(i), msg);
        };
        while (i < s.size()) {
            if (s[i] != '(') fail("expected '(' in cycle notation");
            ++i;
            std::vector<int> cycle;
            if (i < s.size() && s[i] == ')') {
                ++i;  // "()" stands for the identity
                continue;
            }
            while (true) {
                const size_t b = i;
                while (i < s.size() &&
                       std::isdigit(static_cast<unsigned char>(s[i])))
                    ++i;
                if (i == b) fail("expected a point number");
                const std::int64_t pt = std::stoll(s.substr(b, i - b));
                if (pt < 1 || pt > degree)
                    fail("point " + std::to_string(pt) +
                         " outside 1.." + std::to_string(degree));
                cycle.push_back(static_cast<int>(pt - 1));
                if (i < s.size() && s[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < s.size() && s[i] == ')') {
                    ++i;
                    break;
                }
                fail("expected ',' or ')' in cycle");
            }
            cycles.push_back(std::move(cycle));
        }
        try {
            doc.generators.push_back(
                permgroup::Permutation::from_cycles(doc.degree, cycles));
        } catch (const error& e) {
            throw parse_error(gl.number, col0, e.what());
        }
    }
    return doc;
}

std::string serialize_group(const GroupDocument& g) {
    std::ostringstream os;
    os << "FORMAT 1\n";
    os << "NAME";
    if (!g.name.empty()) os << " " << g.name;
    os << "\n";
    os << "DEGREE " << g.degree << "\n";
    os << "GENERATORS\n";
    for (const permgroup::Permutation& p : g.generators) {
        const auto cycles = p.cycles();
        if (cycles.empty()) {
            os << "()\n";
            continue;
        }
        for (const auto& cycle : cycles) {
            os << "(";
            for (size_t i = 0; i < cycle.size(); ++i) {
                if (i) os << ",";
                os << cycle[i] + 1;
            }
            os << ")";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace ctt::tblio
