"""Packing and covering bounds next to the codes that meet them."""

from perfectlike.bounds import covering_lower_bound, packing_upper_bound, packing_upper_bound_dist2
from perfectlike.construct import coset_multifold_packing, shortened_hamming
from perfectlike.verify import complement_covering_parameter, is_multifold_packing


def main():
    print("lambda-fold packings in H(n,3) for n = 3 mod 9")
    for n in (3, 12, 21, 30):
        row = [packing_upper_bound(3, n, lam).bound for lam in (1, 2, 3)]
        print(f"  n={n:>2}  lambda=1..3: {row}")

    # shortened Hamming codes hit the lambda=1 bound
    for q, m in [(3, 2), (3, 3), (4, 2)]:
        C = shortened_hamming(q, m)
        bound = packing_upper_bound(q, C.n, 1).bound
        print(f"shortened Hamming q={q} m={m}: |C|={len(C)}, bound {bound}")

    # with distance 2 allowed, unions of Hamming cosets reach the smaller bound
    for lam in (2, 3):
        C = coset_multifold_packing(3, 2, lam)
        bound = packing_upper_bound_dist2(3, 3, lam).bound
        print(f"H(3,3) {lam}-fold packing: |C|={len(C)} packing={bool(is_multifold_packing(C, lam))} bound {bound}")

    # the complement of a tight lambda-fold packing is a tight mu-fold covering
    C = shortened_hamming(3, 3)
    mu = complement_covering_parameter(3, 12, 1)
    cov = covering_lower_bound(3, 12, mu).bound
    print(f"complement of the (12,3^9,3) code: mu={mu}, size {3**12 - len(C)}, covering bound {cov}")


if __name__ == "__main__":
    main()
