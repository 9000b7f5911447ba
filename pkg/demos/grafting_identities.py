"""The grafting pipelines and the identities that connect them.

A structure is a surface model plus a canonical multicurve of real
curves. Grafting inserts two parallel leaves of a grafting curve; when
the curve crosses the real curves it spirals, and the crossing charts
fuse by a crossing resolution whose mode follows the spiral direction.
The payoff identities: a spiraling graft realizes a Dehn twist about the
grafted curve, two different twist budgets reach the same structure, and
a whole fan of twisted structures collapses onto one common graft.
"""

from graftkit import (
    common_grafts,
    graft_along,
    standard_configuration,
    standard_fan,
    twist_about_curve,
    twist_about_meridian,
)


def main():
    config = standard_configuration()
    base = config.base_structure()
    print(f"base structure key:\n  {base.key()}")

    print("\nDisjoint graft (no crossings, two leaves appear)")
    grafted = graft_along(base, config.gamma)
    print(f"  {grafted.key()}")

    print("\nSpiraling graft = Dehn twist about the curve")
    # the n-fold twisted curve spirals against the (n - sign)-fold
    # twisted structure, and grafting it there is one full twist about it
    for n in (1, -1, 3):
        sign = 1 if n > 0 else -1
        start = twist_about_meridian(base, "a", n - sign)
        curve = twist_about_meridian(config.gamma, "a", n)
        via_graft = graft_along(start, curve)
        via_twist = twist_about_curve(start, curve, sign)
        agree = via_graft.key() == via_twist.key()
        print(f"  twist power {n:+d}: graft key == T^{sign:+d} key? "
              f"{agree}")

    print("\nCommon grafts under the doubled twist budget k + l = 2m")
    for w in common_grafts(config, 1, 3):
        print(f"  m={w.m:+d}  k={w.k:+d}  l={w.l:+d}  -> {w.key}")

    print("\nFan collapse: seven structures, one graft target")
    fan = standard_fan(config, "a", 6, 3)
    for l, k, key in fan.rows:
        print(f"  l={l}  k={k:+d}  -> {key}")
    print(f"  single common key: {fan.passed}")


if __name__ == "__main__":
    main()
