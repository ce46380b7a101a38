#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sfcalc/calculus.hpp"

namespace sfcalc {

using ojson = nlohmann::ordered_json;

ojson to_json(const Quaternion& q);
ojson to_json(const Sphere& s);
ojson to_json(const QMatrix& m);
ojson to_json(const QVector& v);
ojson to_json(const SSpectrum& s);
ojson to_json(const Diagnostics& d);

/// Dual-emitted run report: a human-readable table and a machine-readable
/// JSON file with the same content.  Reports carry no timestamps, so a
/// job with a fixed seed reproduces byte-identical files.
struct Report {
    std::string task;
    ojson inputs = ojson::object();
    ojson results = ojson::object();
    std::vector<CheckLine> checks;

    [[nodiscard]] bool pass() const;
    void add_checks(const IdentityReport& rep);

    [[nodiscard]] std::string text() const;
    [[nodiscard]] ojson json() const;

    /// Writes <stem>.txt and <stem>.json.
    void write(const std::string& stem) const;
};

} // namespace sfcalc
