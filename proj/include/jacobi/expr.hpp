#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jacobi/lincomb.hpp"

namespace jacobi {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Diagram constructors.  Cyclic orders follow one fixed planar convention:
// counterclockwise around each vertex as drawn, legs pointing away from the
// core of the picture.

// Caterpillar tree T(c1,...,cn), n >= 3: a path of n-2 trivalent vertices,
// c1 at the left end, cn at the right end, c2..c_{n-1} hanging upward.
Diagram make_T(const std::vector<Color>& c);

// One-loop diagram O(c1,...,cn), n >= 1: circle with legs outward, colors
// read clockwise.  O with a single leg has a self-loop and is zero.
Diagram make_O(const std::vector<Color>& c);

// Theta graph with legs on the three bands: theta(a...;b...;c...).
// Top band carries the a's (legs up), middle band the b's (legs up),
// bottom band the c's (legs down); all bands run left junction -> right.
Diagram make_theta(const std::vector<Color>& top, const std::vector<Color>& mid,
                   const std::vector<Color>& bot);

Diagram make_strut(Color a, Color b);

// Y graph with a bubble inserted in the edge of the third leg.
Diagram make_buY(Color a, Color b, Color c);

// Closed trivalent graphs used by the sl2 weight system.
Diagram make_theta_closed();     // two vertices joined by three edges
Diagram make_triangular_prism();
Diagram make_k33();

using Bindings = std::map<std::string, Color>;

// expr := term (('+'|'-') term)* ; term := [coef '*'] atom
// atom := O(...) | T(...) | theta(..;..;..) | strut(c,c) | buY(c,c,c) | json
QComb parse_expr(const std::string& text, const Bindings& bind = {});

// --bind a=1+,b=2+ style binding lists
Bindings parse_bindings(const std::string& spec);

// Serialization: every term printed as coef * atom, where the atom is a
// T/O/strut form when the diagram has that shape and a JSON diagram
// otherwise.  parse_expr(to_expr_string(x)) == x.
std::string to_expr_string(const QComb& x);
std::string term_to_string(const CanonicalDiagram& d);

}  // namespace jacobi
