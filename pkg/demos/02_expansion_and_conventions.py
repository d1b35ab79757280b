"""The 1/S expansion of the polygon eigenvalue, and its two normalizations.

For the pi-area regular S-gon the fundamental Dirichlet eigenvalue admits an
asymptotic expansion around the disk value lambda_circle = j_{0,1}^2:

    lambda(S) = lambda_circle * (1 + C_1/S + C_2/S^2 + ...)

Closed forms are known through order 8.  Each nonzero coefficient is a
rational combination of 1, lambda_circle, lambda_circle^2 times a product of
odd zeta values whose arguments sum to the order:

    C_mu = (b + c*lambda_circle + d*lambda_circle^2) * Z_mu / a

This demo prints that ladder, shows the truncated series closing in on a
certified eigenvalue as the order rises, and finishes with the companion
normalization (vertices on the unit circle instead of area pi), whose
coefficients pick up even zeta values through the area rescale factor
2x/sin(2x), x = pi/S.
"""

from mpmath import mp

from polydrum import eigensolver, geometry, specfun

S_DEMO = 7
PREC = 30


def banner(text: str) -> None:
    print()
    print(text)
    print("-" * len(text))


def describe(k: specfun.KnownCoefficient) -> str:
    a, b, c, d = k.closed_form
    if k.value == 0:
        return "0"
    parts = []
    if b:
        parts.append(f"{b}")
    if c:
        parts.append(f"{c}*L" if c != 1 else "L")
    if d:
        parts.append(f"{d}*L^2" if d != 1 else "L^2")
    body = " + ".join(parts).replace("+ -", "- ")
    zeta = "*".join(f"zeta({n})" for n in k.zeta_args)
    denom = f" / {a}" if a != 1 else ""
    return f"({body}) * {zeta}{denom}"


def main() -> None:
    banner("Known coefficients (L = lambda_circle = first Bessel-J0 root, squared)")
    with mp.workdps(PREC + 5):
        print(f"  lambda_circle = {mp.nstr(specfun.lambda_circle(PREC), PREC)}")
    for mu in range(1, 9):
        k = specfun.known_coefficient(mu, PREC)
        value = "0" if k.value == 0 else mp.nstr(k.value, 20)
        print(f"  C_{mu} = {value:<24}  {describe(k)}")

    banner(f"Truncation orders closing in on the certified lambda({S_DEMO})")
    certified = eigensolver.solve(S_DEMO, 20)
    with mp.workdps(40):
        target = certified.mean
        print(f"  certified   {mp.nstr(target, 22)}   (enclosure width {mp.nstr(certified.gap, 2)})")
        for order in range(0, 9):
            approx = specfun.predict(S_DEMO, order, prec=30)
            err = abs(approx - target) / target
            print(f"  order {order}     {mp.nstr(approx, 22)}   rel. error {mp.nstr(err, 2)}")
        print("  (the pause at order 7 is real: C_7 < 0 overshoots at small S, and")
        print("   S = 7 sits below the estimated convergence radius -- see the")
        print("   convergence-horizon demo)")

    banner("Same drum, vertices pinned to the unit circle")
    # Eigenvalues scale inversely with area, so the inscribed-convention
    # value is lambda * pi / (S cos(pi/S) sin(pi/S)).  Its own expansion
    # follows by multiplying the series with 2x/sin(2x) and now contains
    # even zeta values (through the Bernoulli numbers of the factor).
    with mp.workdps(40):
        ins = geometry.inscribed_expansion(order=6, prec=30)
        for mu, c in enumerate(ins, start=1):
            print(f"  C'_{mu} = {mp.nstr(c, 20)}")
        direct = geometry.predict_inscribed(S_DEMO, order=6, prec=30)
        rescaled = geometry.rescale_eigenvalue(
            specfun.predict(S_DEMO, 6, prec=30), S_DEMO, geometry.INSCRIBED, prec=30
        )
        diff = abs(direct - rescaled)
        omitted = abs(ins[-1]) / mp.mpf(S_DEMO) ** 7  # scale of the first cut term
        print(f"  series at S={S_DEMO}:            {mp.nstr(direct, 22)}")
        print(f"  rescaled transcribed value: {mp.nstr(rescaled, 22)}")
        print(f"  |difference| = {mp.nstr(diff, 2)}, the size of the omitted orders")
        print(f"  (|C'_6|/S^7 = {mp.nstr(omitted, 2)}, and the coefficients keep growing):")
        print("  the rescale factor is exact, the inscribed series cuts the product")
        print("  at order 6")
    assert diff < 100 * omitted


if __name__ == "__main__":
    main()
