use super::{ActivityDictionary, DictionaryRule};

pub const BUILTIN_NAME: &str = "uipath-baseline";
pub const BUILTIN_VERSION: &str = "1.0";

/// Meta action followed by its activities. An entry joined by `" - "`
/// is a sequence rule.
const TABLE: &[(&str, &[&str])] = &[
    (
        "Write in UI",
        &[
            "NTypeInto",
            "SetToClipboard - NKeyboardShortcuts",
            "CVTypeIntoWithDescriptor",
        ],
    ),
    (
        "Write to Text File",
        &[
            "WriteTextFile",
            "WordAppendText",
            "DocumentAppendText",
            "AppendLine",
            "DocumentReplaceText",
            "WriteTextFile",
            "NTypeInto",
        ],
    ),
    (
        "Write to Spreadsheet",
        &[
            "WriteCSVFile",
            "WriteCellX",
            "AppendCsvFile",
            "WriteRangeX",
            "AutoFillX",
            "ExportExcelToCsvX",
            "InvokeVBAX",
            "CopyPasteRangeX",
            "AppendRangeX",
            "AutoFitX",
            "FindReplaceValueX",
            "AppendRange",
            "WriteCell",
            "WriteRange",
            "ExecuteMacroX",
            "OutputDataTable",
            "AddDataRow",
            "UpdateRowItem",
            "NTypeInto",
        ],
    ),
    (
        "Creation of Data Objects",
        &["BuildCollection<Object>", "CreateList<Object>", "BuildDataTable"],
    ),
    (
        "Write to Data Objects",
        &[
            "AppendItemToCollection<Object>",
            "AppendItemToList<Object>",
            "UpdateListItem<Object>",
            "AddDataRow",
            "UpdateRowItem",
        ],
    ),
    (
        "SAP login OCR",
        &[
            "Login",
            "Logon",
            "GoogleCloudOCR",
            "MicrosoftAzureComputerVisionOCR",
            "CjkOCR",
            "GoogleOCR",
            "UiPathDocumentOCR",
            "UiPathScreenOCR",
        ],
    ),
    ("Send Mail", &["SendMail", "SendOutlookMail", "SendMailX"]),
    (
        "Receive Mail",
        &["GetPOP3MailMessages", "GetOutlookMailMessages", "GetIMAPMailMessages"],
    ),
    ("Save Mail", &["SaveMail", "SaveOutlookMailMessage", "SaveMailX"]),
    ("User Message", &["LogMessage", "WriteLine"]),
    ("Get text", &["CVGetTextWithDescriptor", "NGetText", "GetOCRText"]),
    ("Click", &["CVClickWithDescriptor", "Nclick", "ClickOCRText"]),
    ("Hover", &["CVHoverWithDescriptor", "Nhover", "HoverOCRText"]),
    ("Highlight", &["CVHighlightWithDescriptor", "Nhighlight"]),
    (
        "Extract DataTable",
        &["CvExtractDataTableWithDescriptor", "NExtractData"],
    ),
    ("Read File Text", &["DocumentReadText", "WordTextRead", "ReadTextFile"]),
    ("Save to clipboard", &["SetToClipboard", "CopySelectedText"]),
    (
        "Loop",
        &[
            "ForEach<Object>",
            "InterruptibleWhile",
            "InterruptibleDoWhile",
            "ParallelForEach<Int32>",
        ],
    ),
    ("Condition", &["If", "IfElseIf", "Switch<Int32>"]),
];

/// The baseline UiPath dictionary: 19 meta actions.
///
/// `WriteTextFile` is listed twice under "Write to Text File"; the repeat is
/// dropped since identical rules are not allowed.
pub fn builtin_dictionary() -> ActivityDictionary {
    let mut rules: Vec<DictionaryRule> = Vec::new();
    for (meta, activities) in TABLE {
        for entry in *activities {
            let rule = DictionaryRule::new(*meta, entry.split(" - "));
            if !rules.contains(&rule) {
                rules.push(rule);
            }
        }
    }
    ActivityDictionary::new(BUILTIN_NAME, BUILTIN_VERSION, rules).expect("builtin dictionary is valid")
}
