#!/usr/bin/env python3
"""Write the bundled category files into crates/core/data/.

Standard gauges: Fibonacci and Ising follow the usual anyon-model tables,
the Z_N entries are the pointed categories with trivial associator (except the
semion, whose associator is -1).  Rerun after editing; output is deterministic.
"""
import cmath
import json
import math
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data")


def cx(z):
    z = complex(z)
    re, im = z.real, z.imag
    # keep exact zeros / ones readable
    return [0.0 if abs(re) < 1e-16 else re, 0.0 if abs(im) < 1e-16 else im]


def e(frac):
    """exp(2πi·frac)"""
    return cmath.exp(2j * math.pi * frac)


def write(name, data):
    path = os.path.join(OUT, name + ".json")
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, ensure_ascii=False)
        fh.write("\n")


def pointed(name, n, labels, f3, r, theta, **extra):
    """Z_n with associator F^{abc}_{a+b+c} = f3(a,b,c) and R^{ab}_{a+b} = r(a,b)."""
    d = {"name": name, **extra, "labels": labels}
    d["dual"] = {labels[a]: labels[(-a) % n] for a in range(n)}
    d["N"] = {f"{labels[a]},{labels[b]},{labels[(a + b) % n]}": 1 for a in range(n) for b in range(n)}
    F = {}
    for a in range(1, n):
        for b in range(1, n):
            for c in range(1, n):
                v = f3(a, b, c)
                dd = (a + b + c) % n
                key = f"{labels[a]},{labels[b]},{labels[c]},{labels[dd]}"
                F[key] = {f"{labels[(a + b) % n]},1,1|{labels[(b + c) % n]},1,1": cx(v)}
    d["F"] = F
    d["R"] = {f"{labels[a]},{labels[b]},{labels[(a + b) % n]}": [[cx(r(a, b))]]
              for a in range(1, n) for b in range(1, n)}
    d["theta"] = {labels[a]: cx(theta(a)) for a in range(n)}
    d["tolerance"] = 1e-9
    return d


def main():
    os.makedirs(OUT, exist_ok=True)
    write("trivial", {"name": "trivial", "labels": ["1"], "dual": {"1": "1"},
                      "N": {"1,1,1": 1}, "theta": {"1": [1.0, 0.0]}, "tolerance": 1e-9})

    phi = (1 + math.sqrt(5)) / 2
    fib = {
        "name": "fibonacci",
        "labels": ["1", "τ"],
        "dual": {"1": "1", "τ": "τ"},
        "N": {"1,1,1": 1, "1,τ,τ": 1, "τ,1,τ": 1, "τ,τ,1": 1, "τ,τ,τ": 1},
        "F": {
            "τ,τ,τ,1": {"τ,1,1|τ,1,1": cx(1)},
            "τ,τ,τ,τ": {
                "1,1,1|1,1,1": cx(1 / phi),
                "1,1,1|τ,1,1": cx(1 / math.sqrt(phi)),
                "τ,1,1|1,1,1": cx(1 / math.sqrt(phi)),
                "τ,1,1|τ,1,1": cx(-1 / phi),
            },
        },
        "R": {"τ,τ,1": [[cx(e(-2 / 5))]], "τ,τ,τ": [[cx(e(3 / 10))]]},
        "theta": {"1": cx(1), "τ": cx(e(2 / 5))},
        "tolerance": 1e-9,
    }
    write("fibonacci", fib)

    s2 = 1 / math.sqrt(2)
    ising = {
        "name": "ising",
        "labels": ["1", "σ", "ψ"],
        "dual": {"1": "1", "σ": "σ", "ψ": "ψ"},
        "N": {"1,1,1": 1, "1,σ,σ": 1, "1,ψ,ψ": 1, "σ,1,σ": 1, "ψ,1,ψ": 1,
              "σ,σ,1": 1, "σ,σ,ψ": 1, "σ,ψ,σ": 1, "ψ,σ,σ": 1, "ψ,ψ,1": 1},
        "F": {},
        "R": {"σ,σ,1": [[cx(e(-1 / 16))]], "σ,σ,ψ": [[cx(e(3 / 16))]],
              "σ,ψ,σ": [[cx(-1j)]], "ψ,σ,σ": [[cx(-1j)]], "ψ,ψ,1": [[cx(-1)]]},
        "theta": {"1": cx(1), "σ": cx(e(1 / 16)), "ψ": cx(-1)},
        "tolerance": 1e-9,
    }
    lab = ["1", "σ", "ψ"]
    fuse = {}
    for k in ising["N"]:
        a, b, c = (lab.index(x) for x in k.split(","))
        fuse.setdefault((a, b), []).append(c)
    for a in range(1, 3):
        for b in range(1, 3):
            for c in range(1, 3):
                for d in range(3):
                    left = [(x,) for x in fuse[(a, b)] if d in fuse.get((x, c), [])]
                    right = [(y,) for y in fuse[(b, c)] if d in fuse.get((a, y), [])]
                    if not left:
                        continue
                    key = f"{lab[a]},{lab[b]},{lab[c]},{lab[d]}"
                    blk = {}
                    if (a, b, c, d) == (1, 1, 1, 1):
                        for x in (0, 2):
                            for y in (0, 2):
                                v = s2 * (-1 if (x, y) == (2, 2) else 1)
                                blk[f"{lab[x]},1,1|{lab[y]},1,1"] = cx(v)
                    else:
                        v = -1 if (a, b, c, d) in [(1, 2, 1, 2), (2, 1, 2, 1)] else 1
                        blk[f"{lab[left[0][0]]},1,1|{lab[right[0][0]]},1,1"] = cx(v)
                    ising["F"][key] = blk
    write("ising", ising)

    write("z2", pointed("z2", 2, ["1", "s"], lambda a, b, c: -1, lambda a, b: 1j, lambda a: 1j ** (a * a),
                        notes="Semion model (Z_2 with nontrivial associator). The generator s has "
                              "Frobenius-Schur indicator -1; cups and caps use the unnormalized convention "
                              "coev coefficient 1/F^{sss}_s = -1, so every closed s-loop equals d_s = 1."))
    w = lambda k: e(k / 3)
    write("z3", pointed("z3", 3, ["0", "1", "2"], lambda a, b, c: 1, lambda a, b: w(a * b), lambda a: w(a * a)))
    write("z2_symmetric", pointed("z2_symmetric", 2, ["1", "b"], lambda a, b, c: 1, lambda a, b: 1,
                                  lambda a: 1, notes="Symmetric (bosonic) braiding: not modular."))

    bp = json.loads(json.dumps(fib))
    bp["name"] = "broken_pentagon"
    bp["notes"] = "Fibonacci with the sign of F^{τττ}_τ[1,1] flipped; violates the pentagon."
    bp["F"]["τ,τ,τ,τ"]["1,1,1|1,1,1"] = cx(-1 / phi)
    write("broken_pentagon", bp)
    bh = json.loads(json.dumps(fib))
    bh["name"] = "broken_hexagon"
    bh["notes"] = "Fibonacci with R^{ττ}_1 complex-conjugated; violates the hexagons."
    bh["R"]["τ,τ,1"] = [[cx(e(2 / 5))]]
    write("broken_hexagon", bh)


if __name__ == "__main__":
    main()
