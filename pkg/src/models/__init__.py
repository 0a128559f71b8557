"""
报告数据模型模块
"""
