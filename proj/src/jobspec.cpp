#include "sfcalc/jobspec.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace sfcalc {

namespace {

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// splits a value string into tokens; bracketed 4-tuples stay together
std::vector<std::string> tokens(const std::string& s, int line) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) { ++i; continue; }
        if (s[i] == '[') {
            const size_t close = s.find(']', i);
            if (close == std::string::npos) throw ParseError("unterminated '['", line);
            out.push_back(s.substr(i, close - i + 1));
            i = close + 1;
        } else {
            size_t j = i;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back(s.substr(i, j - i));
            i = j;
        }
    }
    return out;
}

double to_double(const std::string& t, int line) {
    try {
        size_t pos = 0;
        const double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + t + "'", line);
    }
}

int to_int(const std::string& t, int line) {
    const double v = to_double(t, line);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) throw ParseError("expected an integer, got '" + t + "'", line);
    return i;
}

Quaternion to_quaternion(const std::string& t, int line) {
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw ParseError("expected a quaternion [w,x,y,z], got '" + t + "'", line);
    std::vector<double> comps;
    std::string cur;
    for (size_t i = 1; i + 1 < t.size(); ++i) {
        if (t[i] == ',') {
            comps.push_back(to_double(trim(cur), line));
            cur.clear();
        } else {
            cur += t[i];
        }
    }
    comps.push_back(to_double(trim(cur), line));
    if (comps.size() != 4)
        throw ParseError("quaternion needs 4 components, got " + std::to_string(comps.size()),
                         line);
    return {comps[0], comps[1], comps[2], comps[3]};
}

std::vector<double> to_doubles(const std::vector<std::string>& ts, int line) {
    std::vector<double> out;
    for (const std::string& t : ts) out.push_back(to_double(t, line));
    return out;
}

} // namespace

ImaginaryUnit parse_unit(const std::string& text) {
    if (text == "i" || text == "I") return ImaginaryUnit::i();
    if (text == "j" || text == "J") return ImaginaryUnit::j();
    if (text == "k" || text == "K") return ImaginaryUnit::k();
    std::vector<double> c;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            c.push_back(to_double(trim(cur), -1));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (c.size() != 3) throw ParseError("unit must be i, j, k or a,b,c");
    return {c[0], c[1], c[2]};
}

JobSpec parse_jobspec(std::istream& in) {
    JobSpec spec;
    std::string section;
    std::string line;
    int line_no = 0;
    bool closure_section = false;

    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line == "}") {
            if (closure_section) closure_section = false;
            else if (!section.empty()) section.clear();
            else throw ParseError("unmatched '}'", line_no);
            continue;
        }
        if (line.back() == '{') {
            const std::string name = trim(line.substr(0, line.size() - 1));
            if (section == "operator" && name == "closure") {
                closure_section = true;
                continue;
            }
            if (!section.empty()) throw ParseError("nested section '" + name + "'", line_no);
            if (name != "operator" && name != "function" && name != "contour" &&
                name != "project")
                throw ParseError("unknown section '" + name + "'", line_no);
            section = name;
            if (name == "operator") spec.op.emplace();
            if (name == "function") spec.fn.emplace();
            continue;
        }

        const size_t sp = line.find_first_of(" \t");
        const std::string key = sp == std::string::npos ? line : line.substr(0, sp);
        const std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp));
        const std::vector<std::string> vals = tokens(rest, line_no);
        const auto need_one = [&]() -> const std::string& {
            if (vals.size() != 1) throw ParseError("'" + key + "' takes one value", line_no);
            return vals[0];
        };

        if (section.empty()) {
            if (key == "task") spec.task = need_one();
            else if (key == "seed") spec.seed = static_cast<std::uint64_t>(to_int(need_one(), line_no));
            else if (key == "unit") spec.unit = need_one();
            else if (key == "tolerance") spec.tolerance = to_double(need_one(), line_no);
            else if (key == "output") spec.output = need_one();
            else throw ParseError("unknown key '" + key + "'", line_no);
        } else if (closure_section) {
            auto& op = *spec.op;
            if (key == "real_line") op.closure_real_line = need_one() == "true";
            else if (key == "infinity") op.closure_infinity = need_one() == "true";
            else if (key == "sphere") {
                if (vals.size() != 2) throw ParseError("'sphere' takes s0 s1", line_no);
                op.closure_spheres.push_back(
                    {to_double(vals[0], line_no), to_double(vals[1], line_no)});
            } else throw ParseError("unknown closure key '" + key + "'", line_no);
        } else if (section == "operator") {
            auto& op = *spec.op;
            if (key == "type") op.type = need_one();
            else if (key == "dim") op.dim = to_int(need_one(), line_no);
            else if (key == "row") {
                QVector row;
                for (const std::string& t : vals) row.push_back(to_quaternion(t, line_no));
                op.rows.push_back(std::move(row));
            } else if (key == "symbols") {
                for (const std::string& t : vals) op.symbols.push_back(to_quaternion(t, line_no));
            } else throw ParseError("unknown operator key '" + key + "'", line_no);
        } else if (section == "function") {
            auto& fn = *spec.fn;
            if (key == "name") fn.name = need_one();
            else if (key == "coeffs") fn.coeffs = to_doubles(vals, line_no);
            else if (key == "num") fn.num = to_doubles(vals, line_no);
            else if (key == "den") fn.den = to_doubles(vals, line_no);
            else if (key == "values") {
                for (const std::string& t : vals) fn.values.push_back(to_quaternion(t, line_no));
            } else if (key == "select") {
                for (const std::string& t : vals) fn.select.push_back(to_int(t, line_no));
            } else if (key == "infinity") fn.infinity = to_quaternion(need_one(), line_no);
            else throw ParseError("unknown function key '" + key + "'", line_no);
        } else if (section == "contour") {
            if (key == "clearance") spec.contour.clearance = to_double(need_one(), line_no);
            else if (key == "nodes") spec.contour.nodes = to_int(need_one(), line_no);
            else if (key == "truncation") spec.contour.truncation = to_double(need_one(), line_no);
            else throw ParseError("unknown contour key '" + key + "'", line_no);
        } else if (section == "project") {
            if (key == "sphere") {
                if (vals.size() != 2) throw ParseError("'sphere' takes s0 s1", line_no);
                spec.project.push_back({to_double(vals[0], line_no), to_double(vals[1], line_no)});
            } else throw ParseError("unknown project key '" + key + "'", line_no);
        }
    }
    if (!section.empty()) throw ParseError("unterminated section '" + section + "'", line_no);
    if (spec.task.empty()) throw ParseError("missing 'task'");

    if (spec.op) {
        const auto& op = *spec.op;
        if (op.type == "dense") {
            if (op.rows.empty()) throw ParseError("dense operator needs 'row' entries");
            const size_t n = op.rows.size();
            for (const QVector& r : op.rows)
                if (r.size() != n) throw ParseError("dense operator rows must form a square matrix");
            if (op.dim != 0 && static_cast<size_t>(op.dim) != n)
                throw ParseError("'dim' disagrees with the number of rows");
        } else if (op.type == "diagonal") {
            if (op.symbols.empty()) throw ParseError("diagonal operator needs 'symbols'");
        } else if (op.type == "random") {
            if (op.dim <= 0) throw ParseError("random operator needs 'dim'");
        } else {
            throw ParseError("operator type must be dense, diagonal or random");
        }
    }
    return spec;
}

JobSpec parse_jobspec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open job file '" + path + "'");
    return parse_jobspec(in);
}

} // namespace sfcalc
