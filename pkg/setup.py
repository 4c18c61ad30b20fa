from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "foldcore._kernels._quad",
        sources=["src/foldcore/_kernels/_quad.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
