from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "metadice._sweep_cy",
        ["src/metadice/_sweep_cy.pyx"],
        extra_compile_args=["-O3"],
    )
]

if cythonize is not None:
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
else:
    # Pure-Python install still works; the sweep falls back to _sweep_py.
    ext_modules = []

setup(ext_modules=ext_modules)
