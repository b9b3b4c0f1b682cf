"""Tour of the tubal algebra: tensors as stacks of frontal slices, the
block-circulant embedding, the t-product, transposes and tube inverses."""

import numpy as np

import tensor_kaczmarz as tk

rng = np.random.default_rng(0)

print("A third-order tensor is indexed (row i, column j, frontal k).")
a = tk.Tensor3(rng.standard_normal((2, 3, 2)))
print("shape:", a.shape)

print("\nunfold stacks the frontal slices vertically:")
print(np.round(tk.unfold(a).real, 3))

print("\nbcirc embeds the tensor in a block-circulant matrix;")
print("its first block column is the unfolding.  For a tube (a, b):")
print(tk.bcirc(tk.TubeFiber([1.0, 2.0])).real)

print("\nThe t-product is fold(bcirc(a) @ unfold(b)).")
b = tk.Tensor3(rng.standard_normal((3, 2, 2)))
ab = tk.tprod(a, b)
print("a (2x3x2) * b (3x2x2) ->", ab.shape)

print("\nThe identity tensor has I in slice 0 and zeros elsewhere,")
eye = tk.identity(3, 2)
print("and it is neutral:", tk.allclose(tk.tprod(eye, b), b))

print("\nThe tensor transpose conjugates slices and reverses slices 1..n-1,")
print("so that bcirc commutes with it:",
      np.allclose(tk.bcirc(tk.transpose(a)), tk.bcirc(a).conj().T))

print("\nTubes (1x1xn tensors) are the scalars of this algebra.")
t = tk.TubeFiber([2.0, 1.0])
w = tk.tube_inverse(t)
print("tube (2, 1) has inverse", np.round(w.coefficients.real, 4))
print("their product is the identity tube:",
      np.round(tk.tprod(t, w).data.ravel().real, 12))

print("\nA tube is invertible only when its DFT has no zero coefficient:")
try:
    tk.tube_inverse(tk.TubeFiber([1.0, 1.0]))
except tk.NotInvertibleError as exc:
    print("  (1, 1) fails:", exc)
