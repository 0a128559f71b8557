"""
命令模块
"""