import warnings

from setuptools import setup

kwargs = {}
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    kwargs["ext_modules"] = cythonize(
        [
            Extension(
                "tolgraphs._core._kernels",
                ["src/tolgraphs/_core/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    warnings.warn(
        "Cython/numpy unavailable; installing without the compiled kernels "
        "(the pure-Python fallback is selected at import)"
    )

setup(**kwargs)
