#include "sfcalc/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace sfcalc {

ojson to_json(const Quaternion& q) { return ojson::array({q.w, q.x, q.y, q.z}); }

ojson to_json(const Sphere& s) { return ojson::array({s.s0, s.s1}); }

ojson to_json(const QMatrix& m) {
    ojson entries = ojson::array();
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) entries.push_back(to_json(m(i, j)));
    return ojson{{"dim", m.dim()}, {"entries", entries}};
}

ojson to_json(const QVector& v) {
    ojson entries = ojson::array();
    for (const Quaternion& q : v) entries.push_back(to_json(q));
    return entries;
}

ojson to_json(const SSpectrum& s) {
    ojson spheres = ojson::array();
    for (const Sphere& t : s.spheres) spheres.push_back(to_json(t));
    ojson out{{"spheres", spheres}};
    if (s.includes_infinity) out["includes_infinity"] = true;
    if (s.real_line) out["real_line"] = true;
    return out;
}

ojson to_json(const Diagnostics& d) {
    return ojson{{"nodes", d.nodes},
                 {"est_error", d.est_error},
                 {"tail_bound", d.tail_bound},
                 {"contour", d.contour},
                 {"unit", ojson::array({d.unit.a, d.unit.b, d.unit.c})},
                 {"resolvent_warning", d.resolvent_warning}};
}

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

void Report::add_checks(const IdentityReport& rep) {
    checks.insert(checks.end(), rep.checks.begin(), rep.checks.end());
}

std::string Report::text() const {
    std::ostringstream os;
    os << "task: " << task << "\n";
    os << "inputs:\n";
    for (const auto& [k, v] : inputs.items()) os << "  " << k << " = " << v.dump() << "\n";
    os << "results:\n";
    for (const auto& [k, v] : results.items()) os << "  " << k << " = " << v.dump() << "\n";
    if (!checks.empty()) {
        os << "checks:\n";
        for (const CheckLine& c : checks) {
            os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": residual "
               << std::setprecision(3) << std::scientific << c.residual << " (tolerance "
               << c.tolerance << ")\n"
               << std::defaultfloat;
        }
        os << (pass() ? "all checks passed\n" : "CHECKS FAILED\n");
    }
    return os.str();
}

ojson Report::json() const {
    ojson cj = ojson::array();
    for (const CheckLine& c : checks)
        cj.push_back(ojson{{"name", c.name},
                           {"residual", c.residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
    return ojson{{"task", task},
                 {"inputs", inputs},
                 {"results", results},
                 {"checks", cj},
                 {"pass", pass()}};
}

void Report::write(const std::string& stem) const {
    {
        std::ofstream txt(stem + ".txt");
        if (!txt) throw Error("cannot write report file " + stem + ".txt");
        txt << text();
    }
    {
        std::ofstream js(stem + ".json");
        if (!js) throw Error("cannot write report file " + stem + ".json");
        js << json().dump(2) << "\n";
    }
}

} // namespace sfcalc
