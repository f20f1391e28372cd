"""Walk through why the embedded partition of H(4,4) cannot be lengthened."""

from perfectlike.catalog import load_embedded_partition
from perfectlike.lengthen import lengthen_code, lengthen_partition, unique_shell_partition


def main():
    P = load_embedded_partition()
    print(f"{len(P)} classes, each a {P.classes[0].params} code")

    # every class lengthens on its own, and the shell split is forced
    for label, c in zip(P.labels, P.classes):
        parts = unique_shell_partition(c)
        cert = lengthen_code(c)
        print(f"class {label}: {cert.verdict}, shell parts {[len(p) for p in parts]}")

    # but the forced splits of different classes collide
    res = lengthen_partition(P)
    print("simultaneous lengthening:", "SAT" if res.sat else "UNSAT")
    print("smallest conflict core:", " ".join(res.core_labels))
    for li, a, lj, b, word in res.witnesses[:6]:
        print(f"  class {li} part {a} and class {lj} part {b} share {''.join(map(str, word))}")


if __name__ == "__main__":
    main()
