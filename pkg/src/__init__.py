"""
n2verma - N=2 与 affine sl(2) Verma 型模的精确计算代数引擎
"""

__version__ = "1.0.0"
__author__ = "n2verma Team"
__description__ = "N=2 与 affine sl(2) Verma 型模、奇异向量与谱流的精确计算工具"
