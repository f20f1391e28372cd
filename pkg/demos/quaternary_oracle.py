"""Sample the (20, 4^17, 3) quaternary code built from the embedded partition."""

import numpy as np

from perfectlike.construct import theorem4_code


def main():
    code = theorem4_code(3)
    n, size, d = code.params
    print(f"n={n} |C|=4^{round(np.log(size) / np.log(4))} d={d}")
    rng = np.random.default_rng(0)

    X = code.sample(rng, 20000)
    print("sampled codewords accepted:", bool(code.contains_many(X).all()))
    dist = (X[:10000] != X[10000:]).sum(1)
    print("smallest distance between distinct sampled pairs:", int(dist[dist > 0].min()))

    # random words are members with probability 4^-3
    Y = rng.integers(0, 4, size=(200000, n), dtype=np.uint8)
    print(f"uniform words in the code: {int(code.contains_many(Y).sum())} of {len(Y)} (expected about {len(Y) // 64})")


if __name__ == "__main__":
    main()
