from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "symblob._jacobi_cy",
        ["src/symblob/_jacobi_cy.pyx"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
