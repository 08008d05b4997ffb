from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext_modules = [
    Pybind11Extension(
        "bsscbounds._core",
        sorted(glob("src/*.cpp")) + ["python/module.cpp"],
        include_dirs=["include", "vendor"],
        cxx_std=20,
        extra_compile_args=["-pthread"],
        extra_link_args=["-pthread"],
    ),
]

setup(ext_modules=ext_modules, cmdclass={"build_ext": build_ext})
