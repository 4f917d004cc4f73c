"""
Euler Calculus Toolkit - Examples
Walks through the measure, the direct-image calculus and the Radon inversion
"""
import sys
from fractions import Fraction
from pathlib import Path

sys.path.append(str(Path(__file__).parent))
from src.constructible import (
    cf_add, cf_integrate, cf_pullback, cf_pushforward, cf_scale, indicator_complex, indicator_line,
    line_inclusion, proj_x, render_fn,
)
from src.geometry import (
    Line2D, LineSet1D, OpenInterval, closed_convex_polygon, mu_complex, point2, polygon_boundary,
)
from src.incidence import fano
from src.presburger import Progression, pres_class, pres_normalize, pres_ops
from src.radon import (
    PolygonScene, double_radon_at, inversion_check_finite, pencil_profile, plane_inversion_rhs,
    symbolic_inversion,
)
from src.scenes import UNIT_SQUARE, UNIT_TRIANGLE
from src.semiring import EulerDim


def example_1_measure():
    """Example 1: (chi, dim) of closed and open pieces"""
    print("\n" + "="*70)
    print("EXAMPLE 1: The measure mu = (chi, dim)")
    print("="*70)

    square = closed_convex_polygon(UNIT_SQUARE)
    boundary = polygon_boundary(UNIT_SQUARE)
    print(f"\n🔎 Closed unit square ({len(square.cells)} cells): {mu_complex(square).render()}")
    print(f"🔎 Its boundary circle:                   {mu_complex(boundary).render()}")
    interior = cf_add(indicator_complex(square),
                      cf_scale(EulerDim(-1, 0), indicator_complex(boundary)))
    print(f"🔎 Interior, 1_square - 1_boundary:      {cf_integrate(interior).render()}")
    print(f"🔎 The empty set:                         {EulerDim.zero().render()}")


def example_2_pushforward():
    """Example 2: Fibers of the projection onto the x-axis"""
    print("\n" + "="*70)
    print("EXAMPLE 2: Pushforward and pullback along proj-x")
    print("="*70)

    for name, c in (("square", closed_convex_polygon(UNIT_SQUARE)),
                    ("triangle boundary", polygon_boundary(UNIT_TRIANGLE))):
        f = indicator_complex(c)
        pushed = cf_pushforward(proj_x(), f)
        print(f"\n📤 {name}: ∫ = {cf_integrate(f).render()}")
        print(f"   pushed: {render_fn(pushed)}")
        print(f"   ∫ of the pushforward = {cf_integrate(pushed).render()}  (Fubini)")

    interval = indicator_line(LineSet1D((OpenInterval(Fraction(0), Fraction(1)),)))
    strip = cf_pullback(proj_x(), interval)
    print(f"\n📥 pulling back {render_fn(interval)}")
    print(f"   gives {render_fn(strip)}; value at (1/2, 7): {strip(point2('1/2', 7)).render()}")

    diagonal = line_inclusion(Line2D(point2(0, 0), (1, 1)))
    restricted = cf_pullback(diagonal, indicator_complex(closed_convex_polygon(UNIT_SQUARE)))
    print(f"\n📐 square restricted to the diagonal: {render_fn(restricted)}")


def example_3_finite_radon():
    """Example 3: Inversion over the Fano plane"""
    print("\n" + "="*70)
    print("EXAMPLE 3: Finite Radon inversion")
    print("="*70)

    report = inversion_check_finite(fano(), trials=25, name="fano")
    print(f"\n{'✅' if report.ok else '❌'} {report.summary()}")
    print("   every pair of points spans one line, every point lies on three lines")


def example_4_plane_radon():
    """Example 4: Pencils of lines through points of the plane"""
    print("\n" + "="*70)
    print("EXAMPLE 4: Planar Radon inversion for the unit square")
    print("="*70)

    scene = PolygonScene(closed_convex_polygon(UNIT_SQUARE), name="square")
    for p in ((Fraction(1, 2), Fraction(1, 2)), (2, 2), (0, 0)):
        lhs, rhs = double_radon_at(p, scene), plane_inversion_rhs(p, scene)
        print(f"\n🔎 p = {p}: R'R(1_Z)(p) = {lhs.render()}, "
              f"(-1, 1)·1_Z(p) + ∫1_Z = {rhs.render()} {'✅' if lhs == rhs else '❌'}")
    print(f"\n   pencil through (2, 2): {render_fn(pencil_profile((2, 2), scene))}")

    print("\n   class-level formula in higher dimensions (interior point, ∫ = (1, n)):")
    for n in (2, 3, 4):
        print(f"   n = {n}: {symbolic_inversion(n, EulerDim.one(), EulerDim(1, n)).render()}")


def example_5_presburger():
    """Example 5: Definable subsets of Z"""
    print("\n" + "="*70)
    print("EXAMPLE 5: Presburger sets")
    print("="*70)

    evens = pres_normalize([Progression(0, 2)])
    threes = pres_normalize([Progression(0, 3)])
    fours = pres_normalize([Progression(0, 4)])
    for label, s in (
        ("2Z ∪ 4Z", pres_ops(evens, fours, "union")),
        ("2Z ∩ 3Z", pres_ops(evens, threes, "intersect")),
        ("2Z \\ 4Z", pres_ops(evens, fours, "difference")),
        ("{1, 5, 9}", pres_normalize([1, 5, 9])),
    ):
        print(f"\n🔎 {label:10s} = {s.render():24s} class {pres_class(s).render()}")


if __name__ == "__main__":
    import argparse
    parser = argparse.ArgumentParser()
    parser.add_argument('-1', action='store_true')
    parser.add_argument('-2', action='store_true')
    parser.add_argument('-3', action='store_true')
    parser.add_argument('-4', action='store_true')
    parser.add_argument('-5', action='store_true')
    parser.add_argument('-a', '--all', action='store_true')
    args = parser.parse_args()

    if getattr(args, '1') or args.all: example_1_measure()
    if getattr(args, '2') or args.all: example_2_pushforward()
    if getattr(args, '3') or args.all: example_3_finite_radon()
    if getattr(args, '4') or args.all: example_4_plane_radon()
    if getattr(args, '5') or args.all: example_5_presburger()

    if not any([getattr(args, '1'), getattr(args, '2'), getattr(args, '3'),
                getattr(args, '4'), getattr(args, '5'), args.all]):
        print("\nUsage: python example.py [-1] [-2] [-3] [-4] [-5] [-a]")
        print("  -1   The measure (chi, dim)")
        print("  -2   Pushforward and pullback along proj-x")
        print("  -3   Finite Radon inversion (Fano plane)")
        print("  -4   Planar Radon inversion (unit square)")
        print("  -5   Presburger sets")
        print("  -a   All examples")
