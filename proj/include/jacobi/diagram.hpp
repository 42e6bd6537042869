#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace jacobi {

// Color i^+ / i^- of a univalent vertex, encoded as +i / -i (i >= 1).
using Color = int;

inline Color star(Color c) { return -c; }
inline bool is_positive(Color c) { return c > 0; }
inline int color_index(Color c) { return c > 0 ? c : -c; }

std::string color_name(Color c);
Color parse_color_token(const std::string& tok);

struct DiagramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uni-trivalent graph stored through half-edges (darts).
//
// Darts 0 .. 3T-1 live on trivalent vertices: dart 3v+i is slot i of vertex v
// and the slot order (3v, 3v+1, 3v+2) is the cyclic order at v.  Darts
// 3T .. 3T+U-1 are univalent vertices (legs) carrying colors.  `mate` is the
// fixed-point-free involution pairing darts into edges.
struct Diagram {
    int T = 0;
    std::vector<Color> legs;
    std::vector<int> mate;

    int num_darts() const { return 3 * T + static_cast<int>(legs.size()); }
    bool is_leg_dart(int d) const { return d >= 3 * T; }
    int dart_vertex(int d) const { return d / 3; }  // only for tri darts
    int leg_of_dart(int d) const { return d - 3 * T; }
    int leg_dart(int u) const { return 3 * T + u; }

    int ideg() const { return T; }
    int num_edges() const { return num_darts() / 2; }
    // deg = half the number of vertices
    bool deg_is_integral() const { return (T + static_cast<int>(legs.size())) % 2 == 0; }
    int deg2() const { return T + static_cast<int>(legs.size()); }  // 2*deg

    void check() const;                 // throws DiagramError on malformed structure
    bool has_self_loop() const;         // edge joining two darts of one trivalent vertex
    int num_components() const;
    std::vector<int> component_of_vertex() const;  // tri vertices first, then legs
    int b1() const;                     // first Betti number of the whole graph

    bool operator==(const Diagram&) const = default;
};

// Canonical form of a diagram class under isomorphism, with AS bookkeeping:
// reversing the cyclic order at one vertex flips the sign.  `as_symmetric`
// means some self-isomorphism carries net sign -1, so 2J = 0 in any quotient
// by AS.
struct CanonicalDiagram {
    std::vector<int32_t> cert;
    bool as_symmetric = false;

    Diagram diagram() const;
    int ideg() const;
    int num_legs() const;
    std::vector<Color> leg_colors() const;  // sorted as stored
    int b1() const { return diagram().b1(); }

    bool operator==(const CanonicalDiagram& o) const { return cert == o.cert; }
    bool operator<(const CanonicalDiagram& o) const { return cert < o.cert; }
};

struct CanonResult {
    CanonicalDiagram canon;
    int sign = 1;  // input = sign * canonical representative (modulo AS)
};

// Deterministic minimum over all relabelings; the canonical representative
// reproduces itself with sign +1.
CanonResult canonicalize(const Diagram& d);

// Reverse the cyclic order at trivalent vertex v (an AS flip).
Diagram reverse_vertex(const Diagram& d, int v);

// JSON generic form {"tri":[[h,h,h],...],"uni":[[h,"1+"],...],"edges":[[h,h],...]}
std::string diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const std::string& text);

}  // namespace jacobi
