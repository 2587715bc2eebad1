#pragma once

#include <string_view>

namespace pvc::data {

// Built-in cover cases. Expressions use the fixture grammar; s is t^(1/d).
inline constexpr std::string_view kBuiltinCatalog = R"json({
  "cases": [
    {
      "id": "p4-sym",
      "source": {"kind": "W", "k": "k", "m": "m"},
      "root_degree": 1,
      "map": "z^2/4",
      "branch": {"mu": [2], "nu": [2]},
      "target": {"kind": "P4", "params": {"alpha": "4*k", "beta": "-2*(4*m+1)^2"}},
      "target_potential": "-k + (16*m^2-1)/(4*z^2) + z^2/16",
      "slice_t0": true,
      "notes": "t = 0 slice of the symmetric solution q = 2(4m+1)t + O(t^3)"
    },
    {
      "id": "weber",
      "source": {"kind": "W", "k": "k", "m": "1/4"},
      "root_degree": 1,
      "map": "z^2/2",
      "branch": {"mu": [2], "nu": [2]},
      "target": {"kind": "Weber", "params": {}},
      "target_potential": "z^2/4 - 2*k",
      "slice_t0": false,
      "notes": "parabolic cylinder equation for D_{2k-1/2}"
    },
    {
      "id": "d6-alg",
      "source": {"kind": "W", "k": "k", "m": "1/4"},
      "root_degree": 2,
      "map": "(z-s)^2/z",
      "branch": {"mu": [2], "nu": [1, 1]},
      "target": {"kind": "P3p_D6", "params": {"alpha": "-8*k", "beta": "8*k", "gamma": "4", "delta": "-4"}},
      "target_potential": "1/4 + t^2/(4*z^4) - k*t/z^3 - (8*t+32*k*s+3)/(16*z^2) - k/z + 3/(4*(z+s)^2) - 3/(4*z*(z+s))",
      "printed_potential": "1/4 + t^2/(4*z^2) - k*t/z^3 - (8*t+32*k*s+3)/(16*z^2) - k/z + 3/(4*(z+s)^2) - 3/(4*z*(z+s))",
      "solution": {"q": "-s", "p": "-3/(4*s)"},
      "slice_t0": false,
      "notes": "algebraic solution q = -sqrt(t)"
    },
    {
      "id": "p4-her",
      "source": {"kind": "W", "k": "0", "m": "1/2"},
      "root_degree": 1,
      "map": "z*(z+4*t)/4",
      "branch": {"mu": [1, 1], "nu": [2]},
      "target": {"kind": "P4", "params": {"alpha": "0", "beta": "-2"}},
      "target_potential": "((z+2*t)/4)^2 + 3/(4*(z+2*t)^2)",
      "printed_potential": "((z+2*t)/4)^2 + 4/(3*(z+2*t))",
      "solution": {"q": "-2*t", "p": "0"},
      "slice_t0": false,
      "notes": "rational solution q = -2t"
    },
    {
      "id": "kummer2nd",
      "source": {"kind": "DW", "m": "m"},
      "root_degree": 1,
      "map": "z^2/16",
      "branch": {"mu": [2], "nu": [2]},
      "target": {"kind": "Kummer", "params": {}},
      "target_potential": "1/4 + (16*m^2-1)/(4*z^2)",
      "slice_t0": false,
      "notes": "W_{0,2m}; Kummer's second formula"
    },
    {
      "id": "p5-rat",
      "source": {"kind": "DW", "m": "m"},
      "root_degree": 1,
      "map": "h*t^2*z/(4*(z-1)^2)",
      "branch": {"mu": [1, 1], "nu": [2]},
      "target": {"kind": "P5", "params": {"alpha": "2*m^2", "beta": "-2*m^2", "gamma": "0", "delta": "-2*h"}},
      "target_potential": "h*t^2/(z-1)^4 + (16*m^2-1+h*t^2)/(4*z*(z-1)^2) - 3/(4*z) + (4*m^2-1)/(4*z^2) + 3*(z+2)/(4*(z+1)^2)",
      "solution": {"q": "-1", "p": "-3/4"},
      "slice_t0": false,
      "notes": "rational solution q = -1"
    },
    {
      "id": "d8-alg",
      "source": {"kind": "DW", "m": "1/4"},
      "root_degree": 2,
      "map": "h*(z-s)^2/z",
      "branch": {"mu": [2], "nu": [1, 1]},
      "target": {"kind": "P3p_D8", "params": {"alpha": "8*h", "beta": "-8*h"}},
      "target_potential": "h*t/z^3 + (32*h*s-3)/(16*z^2) + h/z + 3/(4*(z+s)^2) - 3/(4*z*(z+s))",
      "solution": {"q": "-s", "p": "-3/(4*s)"},
      "slice_t0": false,
      "notes": "algebraic solution q = -sqrt(t)"
    },
    {
      "id": "p2-sym",
      "source": {"kind": "W", "k": "k", "m": "1/3"},
      "root_degree": 1,
      "map": "2*z^3/3",
      "branch": {"mu": [3], "nu": [3]},
      "target": {"kind": "P2", "params": {"alpha": "-3*k"}},
      "target_potential": "z^4 - 6*k*z + 3/(4*z^2)",
      "solution": {"q": "0", "p": "0"},
      "slice_t0": true,
      "notes": "t = 0 slice of the symmetric solution q(0) = p(0) = 0"
    },
    {
      "id": "p34-sym",
      "source": {"kind": "DW", "m": "m"},
      "root_degree": 1,
      "map": "z^3/18",
      "branch": {"mu": [3], "nu": [3]},
      "target": {"kind": "P34", "params": {"alpha": "3*(12*m^2-1)"}},
      "target_potential": "z/2 + (36*m^2-1)/(4*z^2)",
      "solution": {"q": "0"},
      "slice_t0": true,
      "notes": "t = 0 slice of the symmetric solutions with q(0) = 0"
    },
    {
      "id": "airy",
      "source": {"kind": "DW", "m": "1/6"},
      "root_degree": 1,
      "map": "z^3/9",
      "branch": {"mu": [3], "nu": [3]},
      "target": {"kind": "Airy", "params": {}},
      "target_potential": "z",
      "slice_t0": false,
      "notes": "Airy equation"
    },
    {
      "id": "p34-rat",
      "source": {"kind": "DW", "m": "1/4"},
      "root_degree": 1,
      "map": "z*(z-3*t/2)^2/18",
      "printed_map": "z*(z-3*t/2)^3/18",
      "branch": {"mu": [2, 1], "nu": [3]},
      "target": {"kind": "P34", "params": {"alpha": "1/4"}},
      "target_potential": "z/2 - t/2 + (t^3/4+1)/(2*t*z) - 3/(16*z^2) + 3/(4*(z-t/2)^2) - 1/(2*t*(z-t/2))",
      "solution": {"q": "t/2", "p": "1/(2*t)"},
      "slice_t0": false,
      "notes": "rational solution q = t/2"
    },
    {
      "id": "d7-alg",
      "source": {"kind": "DW", "m": "1/6"},
      "root_degree": 3,
      "map": "(z+2*s)^3/(32*z)",
      "branch": {"mu": [3], "nu": [2, 1]},
      "target": {"kind": "P3p_D7", "params": {"alpha": "0", "beta": "-2", "gamma": "2"}},
      "target_potential": "t/(4*z^3) - (16+27*s^2)/(72*z^2) + 2/(3*s*z) + 1/8 + 3/(4*(z-s)^2) - 2/(3*s*(z-s))",
      "solution": {"q": "s", "p": "2/(3*s)"},
      "slice_t0": false,
      "notes": "algebraic solution q = t^(1/3)"
    },
    {
      "id": "p4-rat",
      "source": {"kind": "DW", "m": "1/6"},
      "root_degree": 1,
      "map": "z*(z+8*t/3)^3/256",
      "branch": {"mu": [3, 1], "nu": [4]},
      "target": {"kind": "P4", "params": {"alpha": "0", "beta": "-2/9"}},
      "target_potential": "-2/(9*z^2) + 2*t^3/(27*z) + ((z+2*t)/4)^2 + 27/(4*(3*z+2*t)^2) - 1/(z*(3*z+2*t))",
      "solution": {"q": "-2*t/3", "p": "-1/(2*t)"},
      "slice_t0": false,
      "notes": "rational solution q = -2t/3"
    },
    {
      "id": "p1-sym-a",
      "source": {"kind": "DW", "m": "1/5"},
      "root_degree": 1,
      "map": "4*z^5/25",
      "branch": {"mu": [5], "nu": [5]},
      "target": {"kind": "P1", "params": {}},
      "target_potential": "3/(4*z^2) + 4*z^3",
      "solution": {"q": "0", "p": "0"},
      "slice_t0": true,
      "notes": "t = 0 slice of the symmetric solution y(0) = y'(0) = 0"
    },
    {
      "id": "p1-sym-b",
      "source": {"kind": "DW", "m": "1/10"},
      "root_degree": 1,
      "map": "4*z^5/25",
      "branch": {"mu": [5], "nu": [5]},
      "target": {"kind": "P1", "params": {}},
      "target_potential": "4*z^3",
      "slice_t0": true,
      "notes": "t = 0 slice of the symmetric solution y = 1/t^2 + ..."
    },
    {
      "id": "p2-rat",
      "source": {"kind": "DW", "m": "1/6"},
      "root_degree": 1,
      "map": "(z^2+t)^3/36",
      "branch": {"mu": [3, 3], "nu": [6]},
      "target": {"kind": "P2", "params": {"alpha": "0"}},
      "target_potential": "3/(4*z^2) + t*z^2 + z^4",
      "solution": {"q": "0", "p": "0"},
      "slice_t0": false,
      "notes": "rational solution q = 0"
    },
    {
      "id": "degp5-alg",
      "source": {"kind": "Euler", "h": "h"},
      "root_degree": 2,
      "map": "degp5-alg",
      "log_derivative_squared": "(h*(z-1) - 2*s)^2/(h^2*(z-1)^3*z)",
      "target": {"kind": "degP5", "params": {"alpha": "h^2/2", "beta": "-1/8", "gamma": "-2", "delta": "0"}},
      "printed_params": {"alpha": "h^2/2", "beta": "-8", "gamma": "-2", "delta": "0"},
      "target_potential": "t/(z-1)^3 + (4*h^2-13)/(16*(z-1)^2) - 3/(16*z^2) - (2*(h+2*s)^2-5)/(8*z*(z-1)^2) + 3/(4*(z-2*s/h-1)^2) - (3+8*s/h)/(4*z*(z-1)*(z-1-2*s/h))",
      "printed_potential": "t/(z-1)^3 - (4*h^2-13)/(16*(z-1)^2) - 3/(16*z^2) - (2*(h+2*s)^2-5)/(8*z*(z-1)^2) + 3/(4*(z-2*s/h-1)^2) - (3+8*s/h)/(4*z*(z-1)*(z-1-2*s/h))",
      "solution": {"q": "1 + 2*s/h", "p": "h*(3*h+8*s)/(8*s*(h+2*s))"},
      "slice_t0": false,
      "notes": "exponential-type map; algebraic solution y = 1 + 2 sqrt(t)/h"
    },
    {
      "id": "p5-lag",
      "source": {"kind": "Euler", "h": "h"},
      "root_degree": 1,
      "map": "p5-lag",
      "log_derivative_squared": "(h*(z-1) - t)^2/(h^2*(z-1)^4)",
      "target": {"kind": "P5", "params": {"alpha": "h^2/2", "beta": "-1/2", "gamma": "h", "delta": "-1/2"}},
      "printed_params": {"alpha": "h^2/2", "beta": "-1/2", "gamma": "-h", "delta": "-1/2"},
      "target_potential": "t^2/(4*(z-1)^4) - h*t/(2*(z-1)^3) + h^2/(4*(z-1)^2) + 3/(4*(z-t/h-1)^2) - 1/((z-1)*(z-t/h-1))",
      "printed_potential": "t^2/(4*(z-1)^4) - h*t/(2*(z-1)^3) + (h^2/4-1)/(z-1)^2 - 3/(4*(z-t/h-1)^2) - h*t/((z-1)^2*(z-t/h-1))",
      "solution": {"q": "1 + t/h", "p": "h/t"},
      "slice_t0": false,
      "notes": "exponential-type map; Laguerre-type rational solution y = 1 + t/h"
    }
  ]
})json";

}  // namespace pvc::data
