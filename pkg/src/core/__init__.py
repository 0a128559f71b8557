"""
n2verma 核心计算模块
"""
