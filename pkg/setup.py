from setuptools import Extension, setup
from Cython.Build import cythonize

# -ffp-contract=off keeps the compiled recursion bit-identical to the pure
# Python fallback (no fused multiply-add).
setup(
    ext_modules=cythonize(
        [
            Extension(
                "archliq._kernels",
                ["src/archliq/_kernels.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )
)
