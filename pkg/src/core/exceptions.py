"""
n2verma 异常定义
"""

from typing import Optional


class N2VermaError(Exception):
    """n2verma 基础异常"""
    pass


class ScalarError(N2VermaError):
    """系数运算异常"""
    pass


class DivisionByZeroError(ScalarError):
    """除以零有理函数"""
    pass


class PoleError(ScalarError):
    """在分母零点处特化"""
    def __init__(self, message: str, denominator: Optional[str] = None, point: Optional[str] = None):
        super().__init__(message)
        self.denominator = denominator
        self.point = point


class AlgebraError(N2VermaError):
    """代数结构异常 (不支持的交叉括号、未知生成元)"""
    pass


class ModuleSpecError(N2VermaError):
    """模定义异常"""
    pass


class TruncationError(N2VermaError):
    """超出截断范围"""
    pass


class GradingError(N2VermaError):
    """特征标分次不匹配"""
    pass


class ParseError(N2VermaError):
    """输入解析异常"""
    pass


class ConfigurationError(N2VermaError):
    """配置异常"""
    pass


class VerificationError(N2VermaError):
    """验证失败"""
    def __init__(self, message: str, witness: Optional[str] = None):
        super().__init__(message)
        self.witness = witness


# CLI 以退出码 2 报告的输入类错误
USAGE_ERRORS = (ParseError, ModuleSpecError, PoleError, TruncationError, GradingError)
