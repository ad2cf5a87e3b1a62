from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "ccsim._core",
    sources=[
        "src/types.cpp",
        "src/chip_dse.cpp",
        "src/graph_store.cpp",
        "src/actions.cpp",
        "src/fabric.cpp",
        "src/workloads.cpp",
        "src/harness.cpp",
        "bindings/python/module.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
