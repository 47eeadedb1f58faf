from setuptools import Extension, setup
from Cython.Build import cythonize

# Pure-Python fallback is selected at import if this extension is absent,
# so a failed build only costs speed, not functionality.
setup(
    ext_modules=cythonize(
        [
            Extension(
                "cremona3._modmat_c",
                ["src/cremona3/_modmat_c.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
)
