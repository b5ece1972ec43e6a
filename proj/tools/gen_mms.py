#!/usr/bin/env python3
"""Emit closed-form C++ for the manufactured-solution jets and forcings.

Every exact field of the velocity/pressure/rotation/magnetization examples
factors as g(t) * profile(x), with the pressure time-independent. This
script differentiates the spatial profiles symbolically and writes

  src/mms_generated.cpp

containing the jets (value, Jacobian, Laplacian, grad-div) of each profile
and the four forcings as functions of (x, g, g', parameters). Run from the
repository root:

  python3 tools/gen_mms.py
"""

import pathlib

import sympy as sp

x, y, z = sp.symbols("x y z", real=True)
X = (x, y, z)
g, dg = sp.symbols("g dg", real=True)
rho, kappa, eta, zeta, mu0, sigma, eta_p, lambda_p, tau, chi0 = sp.symbols(
    "rho kappa eta zeta mu0 sigma eta_p lambda_p tau chi0", positive=True)
pi = sp.pi

U = sp.Matrix([sp.sin(pi * y), sp.sin(pi * z), sp.sin(pi * x)])
P = 120 * x**2 * y * z - 40 * y**3 * z - 40 * y * z**3
W = sp.Matrix([(x**2 - x) * (y**2 - y) * (z**2 - z), 0, 0])
M = sp.Matrix([sp.sin(pi * x) * sp.sin(pi * y) * sp.sin(pi * z), 0, 0])
PHI = 1000 * (x**2 - x)**2 * (y**2 - y)**2 * (z**2 - z)**2


def grad(s):
    return sp.Matrix([sp.diff(s, v) for v in X])


def jac(V):
    return sp.Matrix(3, 3, lambda r, c: sp.diff(V[r], X[c]))


def div(V):
    return sum(sp.diff(V[i], X[i]) for i in range(3))


def curl(V):
    return sp.Matrix([
        sp.diff(V[2], y) - sp.diff(V[1], z),
        sp.diff(V[0], z) - sp.diff(V[2], x),
        sp.diff(V[1], x) - sp.diff(V[0], y),
    ])


def lap(V):
    return sp.Matrix([sum(sp.diff(V[i], v, 2) for v in X) for i in range(3)])


H = grad(PHI)

# Strong-form residual data. u = gU, omega = gW, m = gM, H = g grad(PHI),
# p~ = P and p = p~ + mu0/2 m.H.
f_u = (rho * (dg * U + g**2 * jac(U) * U) - (eta + zeta) * g * lap(U)
       + grad(P) + mu0 / 2 * g**2 * grad(M.dot(H))
       - mu0 * g**2 * jac(H) * M - 2 * zeta * g * curl(W))
f_w = (rho * kappa * (dg * W + g**2 * jac(W) * U) - eta_p * g * lap(W)
       - (eta_p + lambda_p) * g * grad(div(W)) - mu0 * g**2 * M.cross(H)
       - 2 * zeta * g * (curl(U) - 2 * W))
f_m = (dg * M + g**2 * jac(M) * U - sigma * g * lap(M)
       - g**2 * W.cross(M) + g / tau * (M - chi0 * H))
div_he = -mu0 * g * (div(H) + div(M))

PARAMS = "const ModelParams& p"
PARAM_BIND = ("  const double rho = p.rho, kappa = p.kappa, eta = p.eta, "
              "zeta = p.zeta, mu0 = p.mu0;\n"
              "  const double sigma = p.sigma, eta_p = p.eta_p, "
              "lambda_p = p.lambda_p, tau = p.tau, chi0 = p.chi0;\n")


def emit_body(outputs, targets):
    """Common-subexpression-eliminated assignments of outputs to targets."""
    flat = [sp.simplify(o) if o.is_polynomial(*X) else o for o in outputs]
    reps, reduced = sp.cse(flat, symbols=sp.numbered_symbols("c"))
    lines = []
    for sym, expr in reps:
        lines.append(f"  const double {sym} = {sp.cxxcode(expr, standard='c++17')};")
    for tgt, expr in zip(targets, reduced):
        lines.append(f"  {tgt} = {sp.cxxcode(expr, standard='c++17')};")
    return "\n".join(lines)


def used_symbols(outputs):
    names = set()
    for o in outputs:
        names |= {s.name for s in o.free_symbols}
    return names


def unused_guard(outputs, candidates):
    used = used_symbols(outputs)
    return "".join(f"  (void){c};\n" for c in candidates if c not in used)


def vector_jet(name, V):
    J = jac(V)
    outs = list(V) + [J[r, c] for c in range(3) for r in range(3)]
    outs += list(lap(V)) + list(grad(div(V)))
    tg = [f"j.value({i})" for i in range(3)]
    tg += [f"j.grad({r}, {c})" for c in range(3) for r in range(3)]
    tg += [f"j.laplacian({i})" for i in range(3)]
    tg += [f"j.grad_div({i})" for i in range(3)]
    return (f"SpatialVectorJet {name}(const Eigen::Vector3d& pt) {{\n"
            f"  const double x = pt.x(), y = pt.y(), z = pt.z();\n"
            + unused_guard(outs, "xyz")
            + "  SpatialVectorJet j;\n"
            + emit_body(outs, tg) + "\n  return j;\n}\n")


def scalar_jet(name, S):
    G = grad(S)
    outs = [S] + list(G) + [sum(sp.diff(S, v, 2) for v in X)]
    tg = ["j.value"] + [f"j.grad({i})" for i in range(3)] + ["j.laplacian"]
    return (f"SpatialScalarJet {name}(const Eigen::Vector3d& pt) {{\n"
            f"  const double x = pt.x(), y = pt.y(), z = pt.z();\n"
            + unused_guard(outs, "xyz")
            + "  SpatialScalarJet j;\n"
            + emit_body(outs, tg) + "\n  return j;\n}\n")


PARAM_NAMES = ["rho", "kappa", "eta", "zeta", "mu0", "sigma", "eta_p",
               "lambda_p", "tau", "chi0"]


def forcing(name, F):
    outs = list(F)
    tg = [f"f({i})" for i in range(3)]
    return (f"Eigen::Vector3d {name}(const Eigen::Vector3d& pt, double g, "
            f"double dg, {PARAMS}) {{\n"
            f"  const double x = pt.x(), y = pt.y(), z = pt.z();\n"
            + PARAM_BIND
            + unused_guard(outs, list("xyz") + ["g", "dg"] + PARAM_NAMES)
            + "  Eigen::Vector3d f;\n"
            + emit_body(outs, tg) + "\n  return f;\n}\n")


def scalar_forcing(name, S):
    return (f"double {name}(const Eigen::Vector3d& pt, double g, double dg, "
            f"{PARAMS}) {{\n"
            f"  const double x = pt.x(), y = pt.y(), z = pt.z();\n"
            + PARAM_BIND
            + unused_guard([S], list("xyz") + ["g", "dg"] + PARAM_NAMES)
            + "  double f;\n"
            + emit_body([S], ["f"]) + "\n  return f;\n}\n")


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    parts = [
        "// Generated by tools/gen_mms.py. Do not edit by hand.\n",
        "#include <cmath>\n",
        '#include "mms_generated.hpp"\n',
        "namespace fhd::mms_generated {\n",
        "using std::cos;\nusing std::sin;\n",
        vector_jet("velocity_profile", U),
        vector_jet("rotation_profile", W),
        vector_jet("magnetization_profile", M),
        vector_jet("field_profile", H),
        scalar_jet("pressure_profile", P),
        scalar_jet("potential_profile", PHI),
        forcing("momentum_forcing", f_u),
        forcing("angular_forcing", f_w),
        forcing("magnetization_forcing", f_m),
        scalar_forcing("gauss_forcing", div_he),
        "}  // namespace fhd::mms_generated\n",
    ]
    text = "\n".join(parts)
    (root / "src" / "mms_generated.cpp").write_text(text)


if __name__ == "__main__":
    main()
