#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "sfcalc/qmatrix.hpp"

namespace sfcalc {

/// Parsed job description.  The format is line oriented with nested
/// key/value sections:
///
///   task spectrum
///   seed 7
///   unit j
///   operator {
///     type dense
///     dim 2
///     row [0,-0.5,0,0] [0.5,0,0,0]
///     row [-0.5,0,0,0] [0,-0.5,0,0]
///   }
///   function {
///     name rational
///     num 1
///     den 1 0 1
///   }
///   contour {
///     clearance 0.5
///   }
///
/// Quaternions are always written as 4-tuples [w,x,y,z].
struct JobSpec {
    std::string task;
    std::uint64_t seed = 1;
    std::string unit = "i";
    double tolerance = 1e-10;
    std::string output;

    struct Operator {
        std::string type; // dense | diagonal | random
        int dim = 0;
        std::vector<QVector> rows;      // dense
        QVector symbols;                // diagonal
        bool closure_real_line = false; // diagonal closure
        bool closure_infinity = false;
        std::vector<Sphere> closure_spheres;
    };
    std::optional<Operator> op;

    struct Function {
        std::string name; // polynomial | rational | exp | const | char
        std::vector<double> coeffs;
        std::vector<double> num;
        std::vector<double> den;
        std::vector<Quaternion> values; // const: one per domain component
        std::vector<int> select;        // char: selected component indices
        std::optional<Quaternion> infinity;
    };
    std::optional<Function> fn;

    struct Contour {
        double clearance = 0.5;
        int nodes = 256;
        std::optional<double> truncation;
    };
    Contour contour;

    std::vector<Sphere> project;
};

JobSpec parse_jobspec(std::istream& in);
JobSpec parse_jobspec_file(const std::string& path);

ImaginaryUnit parse_unit(const std::string& text);

} // namespace sfcalc
